"""A synthetic determiner-noun/verb language with one planted regularity.

Every sentence is a run of random nouns and verbs ending in a verb.  Determiners follow
a verb and precede a noun; the ambiguous word ``X`` (noun nominative or verb
imperative) only ever follows a determiner, so the rule that should
be learned first is "after a determiner choose the noun reading".
"""

import random

from morphdisamb.corpus import Sentence, Token
from morphdisamb.fs import FeatureStructure
from morphdisamb.rules import parse_rules

AGRS = ["1SG", "2SG", "3SG", "1PL", "2PL", "3PL"]
POSS = ["NONE", "1SG", "2SG", "3SG", "1PL", "2PL", "3PL"]
CASES = ["nom", "acc", "dat", "loc", "abl", "gen", "ins"]
TAMS = ["past", "narr", "aorist", "prog", "fut"]

DET = FeatureStructure([("cat", "adj"), ("type", "determiner")])
NOUN = FeatureStructure([("cat", "noun"), ("agr", "3SG"), ("poss", "NONE"), ("case", "nom")])
VERB = FeatureStructure([("cat", "verb"), ("tam1", "imp"), ("agr", "2SG")])

PLANTED = parse_rules("[llc:[],lc:[[cat:adj,type:determiner]],rc:[],rrc:[],"
                      "choose:[cat:noun,agr:'3SG',poss:'NONE',case:nom]].")[0]


def _noun(rng):
    return FeatureStructure([("cat", "noun"), ("agr", rng.choice(["3SG", "3PL"])),
                             ("poss", rng.choice(POSS)), ("case", rng.choice(CASES))])


def _verb(rng):
    return FeatureStructure([("cat", "verb"), ("sense", rng.choice(["pos", "neg"])),
                             ("tam1", rng.choice(TAMS)), ("agr", rng.choice(AGRS))])


def corpus(seed=0, min_tokens=5000):
    rng = random.Random(seed)
    out, n = [], 0
    while n < min_tokens:
        words = []
        for _ in range(rng.randint(6, 12)):
            r = rng.random()
            if r < 0.2 and words and words[-1].parses[0].get("cat") == "verb":
                words.append(Token("bu", (DET,)))
                if rng.random() < 0.3:
                    words.append(Token("X", (NOUN, VERB)))
                else:
                    words.append(Token("n", (NOUN if rng.random() < 0.35 else _noun(rng),)))
            elif r < 0.6:
                words.append(Token("n", (_noun(rng),)))
            else:
                words.append(Token("v", (_verb(rng),)))
        words.append(Token("v", (_verb(rng),)))
        out.append(Sentence.from_words(words))
        n += len(words)
    return out
