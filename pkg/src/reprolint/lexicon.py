"""Shipped word lexicon: lemmas and coarse part-of-speech tags.

The lexicon is generated at import time by inflecting a few hundred base
verbs and nouns, which yields roughly two thousand surface forms covering
the vocabulary of GUI-level bug reports. Unknown words fall back to the
suffix rules in `ingest`.
"""

from __future__ import annotations

VERB = "VERB"
NOUN = "NOUN"
PRON = "PRON"
ADP = "ADP"
ADV = "ADV"
DET = "DET"
ADJ = "ADJ"
NUM = "NUM"
LITERAL = "LITERAL"
OTHER = "OTHER"

_VOWELS = "aeiou"

# Verbs whose final consonant doubles before -ed/-ing (tap -> tapped).
_DOUBLING = {
    "tap", "drag", "drop", "pin", "scan", "log", "stop", "swap", "snap",
    "skip", "plan", "chat", "submit", "grab", "trim", "slip", "pop", "zip",
    "unzip", "rub", "jog", "map", "wrap", "scrub", "flag", "refer", "star",
}

# base -> (3sg, past, participle, gerund); None means regular.
_IRREGULAR_VERBS = {
    "be": ("is", "was", "been", "being"),
    "have": ("has", "had", "had", "having"),
    "do": ("does", "did", "done", "doing"),
    "go": ("goes", "went", "gone", "going"),
    "see": ("sees", "saw", "seen", "seeing"),
    "get": ("gets", "got", "gotten", "getting"),
    "take": ("takes", "took", "taken", "taking"),
    "make": ("makes", "made", "made", "making"),
    "come": ("comes", "came", "come", "coming"),
    "give": ("gives", "gave", "given", "giving"),
    "find": ("finds", "found", "found", "finding"),
    "put": ("puts", "put", "put", "putting"),
    "set": ("sets", "set", "set", "setting"),
    "hold": ("holds", "held", "held", "holding"),
    "keep": ("keeps", "kept", "kept", "keeping"),
    "run": ("runs", "ran", "run", "running"),
    "begin": ("begins", "began", "begun", "beginning"),
    "write": ("writes", "wrote", "written", "writing"),
    "read": ("reads", "read", "read", "reading"),
    "choose": ("chooses", "chose", "chosen", "choosing"),
    "buy": ("buys", "bought", "bought", "buying"),
    "pay": ("pays", "paid", "paid", "paying"),
    "send": ("sends", "sent", "sent", "sending"),
    "spend": ("spends", "spent", "spent", "spending"),
    "build": ("builds", "built", "built", "building"),
    "sell": ("sells", "sold", "sold", "selling"),
    "tell": ("tells", "told", "told", "telling"),
    "say": ("says", "said", "said", "saying"),
    "think": ("thinks", "thought", "thought", "thinking"),
    "know": ("knows", "knew", "known", "knowing"),
    "bring": ("brings", "brought", "brought", "bringing"),
    "break": ("breaks", "broke", "broken", "breaking"),
    "shake": ("shakes", "shook", "shaken", "shaking"),
    "stick": ("sticks", "stuck", "stuck", "sticking"),
    "shut": ("shuts", "shut", "shut", "shutting"),
    "hit": ("hits", "hit", "hit", "hitting"),
    "cut": ("cuts", "cut", "cut", "cutting"),
    "quit": ("quits", "quit", "quit", "quitting"),
    "split": ("splits", "split", "split", "splitting"),
    "undo": ("undoes", "undid", "undone", "undoing"),
    "redo": ("redoes", "redid", "redone", "redoing"),
}

_VERB_BASES = """
tap click press push hit touch select choose pick mark unmark check uncheck
tick untick toggle enable disable open launch start run restart relaunch
reopen close exit quit leave go come navigate return browse visit enter type
input insert write fill set edit modify change update clear erase delete
remove add create make save store cancel discard confirm accept submit apply
send share sync synchronize upload download import export restore reset
refresh reload load install uninstall upgrade swipe scroll slide drag drop
fling pull pinch zoom rotate turn flip tilt shake hold release view see look
watch observe notice find search locate show display hide appear disappear
vanish expand collapse maximize minimize resize move reorder rearrange sort
filter group split merge copy paste cut undo redo rename highlight focus
blur hover activate deactivate switch swap repeat retry try attempt continue
proceed finish complete stop pause resume play record capture snap scan
print preview crash freeze hang fail break fix repair solve reproduce happen
occur work behave respond react wait stay remain keep get take give put
bring use do perform execute follow read say tell ask want need expect
assume suppose think know remember forget help report log sign register
subscribe unsubscribe verify validate test debug build configure customize
adjust increase decrease raise lower mute unmute dismiss ignore skip notify
alert remind schedule book order purchase buy sell pay charge calculate
count measure convert translate format encode decode encrypt decrypt lock
unlock attach detach connect disconnect pair unpair join have be begin
long-press long-tap long-click spin shrink grow drain flash blink glow
scroll-down refill recheck retype reenter resave recreate
""".split()

_MODALS = ["should", "would", "could", "might", "must", "shall", "may", "can", "will"]

_NOUN_BASES = """
app application program software phone device tablet emulator android screen
display page window dialog popup pop-up toast notification banner activity
view layout panel pane section area region header footer toolbar titlebar
statusbar navbar sidebar drawer tab menu submenu option item entry row column
cell grid table list field textfield box textbox checkbox radio button key
keyboard keypad output label text string value number amount price cost total
sum currency dollar euro cent percent description name title subtitle caption
hint placeholder icon image picture photo thumbnail avatar logo graphic chart
graph diagram map date time day week month year hour minute second calendar
clock timer alarm reminder task note message email mail address contact user
account profile password username pin code setting preference configuration
config default theme color colour font size style language locale backup file
folder directory path document report history cache data database storage
memory card sd disk cloud drive server network wifi bluetooth connection
internet version release error bug issue problem failure exception warning
confirmation prompt progress spinner loader indicator percentage result query
keyword term category tag sequence step instruction action operation gesture
rotation orientation landscape portrait mode state status flag slider seekbar
dropdown drop-down picker selector chooser combo expense income budget
transaction payment receipt invoice bill balance wallet bank vendor merchant
shop product service subscription plan summary overview detail info
information statistic favorite bookmark link url website web browser article
wiki wikipedia dictionary definition word sentence paragraph line character
letter digit symbol space newline weight mileage fuel gas vehicle car trip
distance location place position coordinate gps session job queue worker
process feature function functionality behavior behaviour response feedback
suggestion recommendation autocomplete completion swatch accent grocery
lunch dinner breakfast coffee rent salary refund deposit withdrawal ok okay
yes
"""
# words that read as both verb and noun; the tokenizer picks by position
_AMBIGUOUS = """
tap click press check open type input set save search display list sort
filter export start view record report play mark switch change update help
share sync download upload crash scroll swipe backup order note schedule
charge purchase log label group format lock pin focus zoom
""".split()

_ADJECTIVES = """
new old red green blue yellow black white main big small large long short
empty full wrong correct current previous last favorite automatic manual dark
light visible hidden enabled disabled active inactive weird great default
custom other same different second third broken missing duplicate extra
numeric blank bold gray
""".split()

_ADVERBS = """
then next now again back up down left right twice once already just also
finally quickly slowly automatically immediately correctly properly here
there away afterwards later soon still too very well when whenever while
first instead only never always sometimes often
""".split()

_PREPOSITIONS = """
on in into for of as at to with from by inside onto over under without
within after before during between about through via
""".split()

_DETERMINERS = """
the a an this that these those some any each every all both no another
either neither my your his her their our its
""".split()

_PRONOUNS = """
i you he she it we they me him us them myself yourself someone anyone
something anything nothing everything user
""".split()

_NUMBER_WORDS = """
zero one two three four five six seven eight nine ten eleven twelve
""".split()

_MISC = """
and or but if because so until unless which who not please few several
""".split()


def _plural(noun: str) -> str:
    if noun.endswith("y") and len(noun) > 1 and noun[-2] not in _VOWELS:
        return noun[:-1] + "ies"
    if noun.endswith(("s", "sh", "ch", "x", "z")):
        return noun + "es"
    return noun + "s"


def _verb_forms(base: str) -> list[str]:
    if base in _IRREGULAR_VERBS:
        return [f for f in _IRREGULAR_VERBS[base] if f]
    stem = base
    if base in _DOUBLING:
        stem = base + base[-1]
    if base.endswith("e"):
        ed, ing = base + "d", base[:-1] + "ing"
    elif base.endswith("y") and len(base) > 1 and base[-2] not in _VOWELS:
        ed, ing = base[:-1] + "ied", base + "ing"
    else:
        ed, ing = stem + "ed", stem + "ing"
    if base.endswith("y") and len(base) > 1 and base[-2] not in _VOWELS:
        s3 = base[:-1] + "ies"
    elif base.endswith(("s", "sh", "ch", "x", "z", "o")):
        s3 = base + "es"
    else:
        s3 = base + "s"
    return [s3, ed, ing]


def _build() -> tuple[dict[str, tuple[str, str]], dict[str, str], set[str]]:
    entries: dict[str, tuple[str, str]] = {}
    verb_lemmas: dict[str, str] = {}

    def put(surface: str, lemma: str, pos: str) -> None:
        entries.setdefault(surface, (lemma, pos))

    for word in _DETERMINERS:
        put(word, word, DET)
    for word in _PRONOUNS:
        put(word, word, PRON)
    for word in _PREPOSITIONS:
        put(word, word, ADP)
    for word in _ADVERBS:
        put(word, word, ADV)
    for word in _NUMBER_WORDS:
        put(word, word, NUM)
    for word in _ADJECTIVES:
        put(word, word, ADJ)
    for word in _MISC:
        put(word, word, OTHER)
    for word in _MODALS:
        put(word, word, VERB)
        verb_lemmas[word] = word

    for base in _VERB_BASES:
        verb_lemmas[base] = base
        for form in _verb_forms(base):
            verb_lemmas.setdefault(form, base)
    for base in _NOUN_BASES.split():
        put(base, base, NOUN)
        put(_plural(base), base, NOUN)

    for surface in ("am", "are", "were"):
        verb_lemmas[surface] = "be"

    ambiguous = set(_AMBIGUOUS)
    for surface, base in verb_lemmas.items():
        if surface in ambiguous:
            continue
        put(surface, base, VERB)

    return entries, verb_lemmas, ambiguous


ENTRIES, VERB_LEMMAS, AMBIGUOUS = _build()


def lookup(word: str) -> tuple[str, str] | None:
    """Return (lemma, pos) for a known unambiguous surface form."""
    return ENTRIES.get(word)


def verb_lemma(word: str) -> str | None:
    """Return the base verb lemma if the word has a verb reading."""
    return VERB_LEMMAS.get(word)


def is_ambiguous(word: str) -> bool:
    """True when the word reads as both verb and noun."""
    return word in AMBIGUOUS


def size() -> int:
    return len(ENTRIES) + len(VERB_LEMMAS)
