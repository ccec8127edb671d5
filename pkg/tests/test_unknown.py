import random

from hypothesis import given, strategies as st

from morphdisamb.preprocess.convert import parse_linear
from morphdisamb.preprocess.unknown import guess_unknown, load_inventory

TALKSHOW = {
    ("talkshowumun", "NONE", "nom"),
    ("talkshowumu", "2SG", "nom"),
    ("talkshowum", "NONE", "gen"),
    ("talkshowum", "2SG", "nom"),
    ("talkshowu", "1SG", "gen"),
    ("talkshow", "1SG", "gen"),
}


def summary(p):
    return (p.get("root"), p.get("poss"), p.get("case"))


def test_talkshowumun_gives_exactly_six():
    got = guess_unknown("talkshowumun")
    assert len(got) == 6
    assert {summary(p) for p in got} == TALKSHOW
    assert all(p.get("cat") == "noun" and p.get("agr") == "3SG" for p in got)


def test_kermezdere_proper_noun():
    got = guess_unknown("kermezdere'deki")
    loc_rel = parse_linear("[[cat,noun],[root,kermezdere],[agr,'3SG'],[poss,'NONE'],"
                           "[type,proper],[case,locy],[conv,adj,rel]]")
    loc_rel_noun = parse_linear("[[cat,noun],[root,kermezdere],[agr,'3SG'],[poss,'NONE'],"
                                "[type,proper],[case,locy],[conv,adj,rel],"
                                "[conv,noun,none],[agr,'3SG'],[poss,'NONE'],[case,nom]]")
    assert loc_rel in got and loc_rel_noun in got
    assert all(p.get("root") == "kermezdere" and p.get("type") == "proper" for p in got)


def test_bare_root_comes_first():
    assert summary(guess_unknown("kermezdere'deki")[0]) == ("kermezdere", "NONE", "nom")
    assert guess_unknown("xyz") == [parse_linear("[[cat,noun],[root,xyz],[agr,'3SG'],[poss,'NONE'],[case,nom]]")]


def test_foreign_harmony_fallback():
    cases = {p.get("case") for p in guess_unknown("Carter'a")}
    assert cases == {"nom", "dat"}


def test_no_letters_no_guess():
    assert guess_unknown("123") == []
    assert guess_unknown("") == []


# independent generator ----------------------------------------------------------

VOWELS = "aeIioOuU"
BACK = set("aIou")
ROUND = set("oOuU")
VOICELESS = set("fhsS")
FINALS = "lmnrszySfh"


def _last_vowel(s):
    return next(c for c in reversed(s) if c in VOWELS)


def _a(s):
    return "a" if _last_vowel(s) in BACK else "e"


def _i(s):
    v = _last_vowel(s)
    if v in ROUND:
        return "u" if v in BACK else "U"
    return "I" if v in BACK else "i"


def _ends_vowel(s):
    return s[-1] in VOWELS


def inflect(root, plural, poss, case):
    w = root
    if plural:
        w += "l" + _a(w) + "r"
    pron = False
    if poss != "NONE":
        buf = "" if _ends_vowel(w) else _i(w)
        if poss == "1SG":
            w += buf + "m"
        elif poss == "2SG":
            w += buf + "n"
        elif poss == "1PL":
            w += buf + "m" + _i(w + buf + "m") + "z"
        elif poss == "2PL":
            w += buf + "n" + _i(w + buf + "n") + "z"
        else:
            w += ("s" if _ends_vowel(w) else "") + _i(w)
            pron = True
    if case == "nom":
        return w
    v = _ends_vowel(w)
    d = "t" if w[-1] in VOICELESS else "d"
    if pron and case in ("acc", "dat", "loc", "abl"):
        return w + {"acc": "n" + _i(w), "dat": "n" + _a(w),
                    "loc": "nd" + _a(w), "abl": "nd" + _a(w) + "n"}[case]
    return w + {
        "acc": ("y" if v else "") + _i(w),
        "dat": ("y" if v else "") + _a(w),
        "loc": d + _a(w),
        "abl": d + _a(w) + "n",
        "gen": ("n" if v else "") + _i(w) + "n",
        "ins": ("y" if v else "") + "l" + _a(w),
    }[case]


def random_root(rng):
    body = "".join(rng.choice("bcdgklmnprstvz") + rng.choice(VOWELS) for _ in range(rng.randint(1, 3)))
    return body + (rng.choice(FINALS) if rng.random() < 0.6 else "")


def test_generated_inflections_are_recovered():
    rng = random.Random(1)
    inv = load_inventory()
    for _ in range(200):
        root = random_root(rng)
        plural = rng.random() < 0.3
        poss = rng.choice(["NONE", "1SG", "2SG", "3SG", "1PL", "2PL"])
        case = rng.choice(["nom", "acc", "dat", "loc", "abl", "gen", "ins"])
        word = inflect(root, plural, poss, case)
        want = ("noun", root, "3PL" if plural else "3SG", poss, case)
        got = {(p.get("cat"), p.get("root"), p.get("agr"), p.get("poss"), p.get("case"))
               for p in guess_unknown(word, inv)}
        assert want in got, (word, want)


@given(st.text(alphabet="abdeIiklmnorsuU", min_size=1, max_size=12))
def test_bare_reading_always_present_and_unique(w):
    got = guess_unknown(w)
    assert summary(got[0]) == (w, "NONE", "nom")
    assert len(set(got)) == len(got)
    assert all(p.get("cat") == "noun" for p in got)
