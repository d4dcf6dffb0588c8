#!/usr/bin/env python3
"""Builds english.lex, a constructed English lexicon with typed morpheme
segmentations (s = stem, 1 = stress-neutral affix, 2 = stress-affecting
affix, i = inflection).

Words are derived from a hand-written list of stems, each naming the
affixes it combines with, plus follow-up rules per derivational suffix.
Surface spelling changes (e-deletion, y to i, consonant doubling) are
applied to the surface and the segmentation follows the surface as-is:
hope+ing is segmented hop|ing, stop+ed is stop|ped.

The output is deterministic. Run from this directory:

    python3 make_lexicon.py > english.lex
"""

VOWELS = set("aeiouy")

# suffix -> (text, tag, output category, follow-up suffixes)
DERIV = {
    "ness": ("ness", "1", "N", []),
    "less": ("less", "1", "A", ["ness", "ly"]),
    "ful": ("ful", "1", "A", ["ness", "ly"]),
    "ly": ("ly", "1", "R", []),
    "ment": ("ment", "1", "N", ["al"]),
    "er": ("er", "1", "N", []),
    "able": ("able", "1", "A", ["ity", "ness"]),
    "ish": ("ish", "1", "A", ["ness", "ly"]),
    "hood": ("hood", "1", "N", []),
    "ship": ("ship", "1", "N", []),
    "dom": ("dom", "1", "N", []),
    "ist": ("ist", "1", "N", ["ic"]),
    "ism": ("ism", "1", "N", []),
    "al": ("al", "1", "A", ["ity", "ly", "ize", "ist", "ism"]),
    "y": ("y", "1", "A", ["ness", "ly"]),
    "ize": ("ize", "1", "V", ["ation", "er"]),
    "en": ("en", "1", "V", ["er"]),
    "ive": ("ive", "1", "A", ["ity", "ness", "ly"]),
    "ance": ("ance", "1", "N", []),
    "ence": ("ence", "1", "N", []),
    "ity": ("ity", "2", "N", []),
    "ic": ("ic", "2", "A", ["al", "ity"]),
    "ion": ("ion", "2", "N", ["al"]),
    "ation": ("ation", "2", "N", ["al"]),
    "ous": ("ous", "2", "A", ["ness", "ly"]),
    "ify": ("ify", "2", "V", ["ation"]),
    "ee": ("ee", "2", "N", []),
    "ian": ("ian", "2", "N", []),
    "ial": ("ial", "2", "A", ["ly"]),
}

PREFIX = {"un", "re", "dis", "mis", "pre", "over", "non", "in", "out", "under", "ab", "sub", "anti"}

# text, category, derivational suffixes, prefixes, flags
# flags: c = takes -er/-est, d = doubles final consonant, o = plural -es after o
STEMS = """
kind A ness,ly,hood un c
dark A ness,ly,en - c
soft A ness,ly,en - c
hard A ness,ly,en,ship - c
bright A ness,ly,en - c
sweet A ness,ly,en,ish - c
quick A ness,ly,en - c
slow A ness,ly,ish - c
cold A ness,ly,ish - c
warm A ness,ly,th - c
rich A ness,ly,en - c
poor A ness,ly,ish - c
weak A ness,ly,en,ling - c
strong A ly,ish - c
fresh A ness,ly,en - c
loud A ness,ly,ish - c
deep A ness,ly,en - c
steep A ness,ly,en - c
short A ness,ly,en,age - c
sharp A ness,ly,en,er - c
thick A ness,ly,en - c
black A ness,ly,en,ish - c
white A ness,ly,en,ish - c
red A ness,ish,en - cd
wet A ness,ish - cd
mad A ness,ly,en - cd
sad A ness,ly,en - cd
big A ness,ish - cd
hot A ness,ly - cd
fit A ness,ful - cd
glad A ness,ly,en - cd
happy A ness,ly un c
easy A ness,ly un c
busy A ness,ly - c
lucky A ly un c
heavy A ness,ly - c
silly A ness - c
ugly A ness - c
pretty A ness,ly - c
tidy A ness,ly un c
lazy A ness,ly - c
nice A ness,ly - c
wise A ly un c
safe A ness,ly,ty un c
rare A ness,ly,ity - c
pure A ness,ly,ity,ify,ist im c
brave A ness,ly,ry - c
true A ness - c
fair A ness,ly un c
clean A ness,ly,er un c
clear A ness,ly,ance un c
real A ness,ity,ist,ism,ize un -
normal A ity,ly,ize,cy ab -
formal A ity,ly,ize,ism in -
total A ity,ly,ize - -
legal A ity,ly,ize,ism il -
moral A ity,ly,ize,ist,ism im -
equal A ity,ly,ize un -
neutral A ity,ize,ism - -
local A ity,ly,ize,ism - -
central A ity,ly,ize,ism - -
vital A ity,ly,ize - -
active A ity,ly,ist,ism in -
solid A ity,ly,ify - -
humid A ity,ify - -
valid A ity,ly,ate in -
rapid A ity,ly - -
stupid A ity,ly - -
timid A ity,ly - -
able A ity un -
sane A ity,ly in -
modern A ity,ly,ize,ism,ist - -
human A ity,ly,ize,ism,ist in -
common A ness,ly,er un c
honest A ly,y dis -
polite A ness,ly im -
correct A ness,ly in -
direct A ness,ly,ion,ive in -
absurd A ity,ly - -
odd A ity,ly - -
act V ion,ive,or re -
direct V ion,ive,or,ory mis -
protect V ion,ive,or un -
predict V ion,ive,able un -
correct V ion,ive,able - -
construct V ion,ive,or re -
connect V ion,ive dis -
collect V ion,ive,or,able re -
invent V ion,ive,or re -
detect V ion,ive,or,able un -
express V ion,ive,ly - -
impress V ion,ive,able - -
digest V ion,ive,ible in -
suggest V ion,ive - -
select V ion,ive,or - -
reflect V ion,ive,or - -
adopt V ion,ive,er,able - -
adapt V ation,ive,er,able - -
inform V ation,ive,er,ant mis -
form V ation,ive,er,al re -
transform V ation,er,able - -
explore V ation,er - -
expect V ation,ant un -
consider V ation,able re -
accept V ance,able,or un -
appear V ance dis,re -
perform V ance,er - -
depend V ence,able,ent in -
exist V ence,ent - -
differ V ence,ent - -
employ V ment,er,ee,able un -
enjoy V ment,able - -
pay V ment,ee,er,able re,pre,over,under -
train V ee,er,able re,un -
develop V ment,er re,under -
govern V ment,or,able - -
agree V ment,able dis -
move V ment,er,able re -
manage V ment,er mis -
treat V ment,able mis,re -
amuse V ment - -
punish V ment,er,able un -
judge V ment,er mis,pre -
walk V er out -
talk V er,ative - -
play V er,ful,able re,out,over,under -
jump V er,y out -
help V er,ful,less un -
paint V er re -
print V er,able re,mis -
read V er,able re,mis -
teach V er,able re,mis -
learn V er un,re -
work V er,able re,over -
build V er re -
kill V er,able - -
love V er,able,ly,less un -
hope V ful,less - -
care V ful,less - -
use V ful,less,able,er re,mis,dis -
create V ion,ive,or re -
relate V ion,ive - -
educate V ion,or re -
locate V ion,or re -
operate V ion,ive,or - -
decorate V ion,ive - -
celebrate V ion - -
imitate V ion,ive,or - -
complete V ion,ly,ness in -
obey V - dis -
open V er,ness,ly re,un -
order V ly dis -
own V er,ship dis -
pack V er,age re,un -
point V er,less - -
pull V er - -
push V er,y - -
reach V able out -
rest V ful,less - -
return V able - -
sail V er,or - -
search V er,able re -
shock V er - -
sing V er out -
sleep V er,less,y over -
spell V er,able mis -
start V er re -
stay V er out -
test V er,able re,pre -
thank V ful,less - -
trust V ful,less,y dis,mis -
turn V er,able re -
view V er,able re,pre -
visit V or re -
wait V er - -
want V - - -
warn V - fore -
wash V er,able un,pre -
watch V er,ful,able - -
wish V ful - -
wonder V ful,ment - -
harm V ful,less - -
fear V ful,less - -
mark V er,able re -
mend V er,able - -
limit V ation,less,able un -
hunt V er,ress - -
join V er,t re,dis -
kick V er - -
pass V er,able,age - -
hold V er up -
stop V er,able,age - d
plan V er,less - d
run V er,ner out d
swim V er,mer - d
shop V er,per - d
drop V let - d
hug V able - d
rob V ber,bery - d
sin V ful,ner - d
nation N al,hood,ist - -
person N al,hood,ify - -
music N al,ian - -
region N al,ism - -
tradition N al,ist - -
profession N al,ism,ist - -
emotion N al,less un -
fiction N al,ist non -
option N al - -
fashion N able,er un -
season N al,able un -
reason N able,er un -
comfort N able,er,less un -
friend N ly,ship,less,y un -
child N hood,ish,less - -
king N dom,ly,ship,less - -
man N hood,ly,ish - -
boy N hood,ish - -
girl N hood,ish - -
mother N hood,ly,less - -
father N hood,ly,less - -
brother N hood,ly - -
sister N hood,ly - -
neighbour N hood,ly - -
leader N ship,less - -
member N ship non -
partner N ship - -
free A dom,ly - -
star N dom,less,y - d
hero N ic,ism,ine - o
art N ist,ful,less,y - -
poet N ic,ry - -
organ N ic,ist,ize - -
base N ic,less,ment - -
atom N ic,ize - -
metal N ic non -
rhythm N ic - -
poison N ous,er - -
danger N ous - -
mountain N ous,eer - -
humour N ist,less - -
fame N ous in -
nerve N ous,less - -
virtue N ous - -
joy N ful,less,ous - -
power N ful,less - -
peace N ful - -
faith N ful,less - -
pain N ful,less - -
shame N ful,less - -
skill N ful - -
tear N ful,less - -
colour N ful,less,ist dis -
home N less,ly,y - -
sun N less,ny - d
dirt N y - -
cloud N y,less - -
rain N y - -
wind N y,less - -
salt N y,less - -
dust N y,er - -
fog N y - d
luck N y,less - -
taste N ful,less,y,er dis -
sense N less non -
cheer N ful,less,y - -
class N ify,less,ic,ism,y - -
just A ify,ly,ness un -
glory N ify,ous - -
note N ify,able - -
sign N ify,al,er - -
book N ish,let,less - -
house N ful,hold,less - -
horse N less,y - -
water N y,less - -
fire N less - -
sea N less - -
ship N ment - -
land N less - -
word N less,y - -
hand N ful,y,less - -
head N less,y,er - -
heart N less,y,en - -
mind N ful,less - -
light N ness,en,er,less - -
night N ly,less - -
moon N less - -
field N er - -
farm N er - -
bank N er,able - -
garden N er - -
ground N less - -
guard N ian - -
library N ian - -
history N ian,ic - -
comedy N ian - -
grammar N ian - -
magic N ian,al - -
parent N hood,al - -
state N hood,ment,less - -
veto N - - o
potato N - - o
tomato N - - o
echo N less - o
city N - - -
party N - - -
lady N ship - -
baby N ish,hood - -
body N less - -
story N - - -
enemy N - - -
army N - - -
bus N - - -
box N er - -
fox N y - -
glass N y,ful - -
church N - - -
dish N ful - -
wish N - - -
""".strip()

COMPOUNDS = """
horse whip
horse shoe
sun light
sun rise
sun set
rain coat
rain bow
rain fall
foot ball
foot print
foot step
book case
book shop
book mark
water fall
water mark
fire work
fire man
fire place
home work
home land
hand book
hand shake
day light
day time
moon light
star light
sea side
sea shore
news paper
air port
air craft
bed room
class room
bath room
head line
head light
heart beat
land mark
up land
black bird
black board
green house
farm house
light house
wood land
mid night
snow fall
snow man
butter fly
tooth brush
pass word
key board
post man
""".strip()

# hand-written analyses that the rules do not produce
EXTRA = """
abnormalities ab/1 norm/s al/1 iti/2 es/i
abnormal ab/1 norm/s al/1
abnormality ab/1 norm/s al/1 ity/2
abnormally ab/1 norm/s al/1 ly/1
disagreeableness dis/1 agree/s able/1 ness/1
nuttiest nut/s ti/1 est/i
vetoes veto/s es/i
printable print/s able/1
early early/s
navy navy/s
coaled coal/s ed/i
manslaughter man/s s/1 laughter/s
scarcity scarc/s ity/2
""".strip()

# derivational suffixes used by stems that are not in DERIV get their own
# entries here: (text, tag, output category)
MINOR = {
    "th": ("th", "1", "N"), "ling": ("ling", "1", "N"), "age": ("age", "1", "N"),
    "ty": ("ty", "1", "N"), "ry": ("ry", "1", "N"), "cy": ("cy", "1", "N"),
    "ate": ("ate", "2", "V"), "or": ("or", "1", "N"), "ory": ("ory", "1", "A"),
    "ible": ("ible", "1", "A"), "ant": ("ant", "1", "A"), "ent": ("ent", "1", "A"),
    "ative": ("ative", "2", "A"), "ing": ("ing", "1", "N"), "ed": ("ed", "1", "A"),
    "t": ("t", "1", "N"), "ress": ("ress", "1", "N"), "ner": ("ner", "1", "N"),
    "mer": ("mer", "1", "N"), "per": ("per", "1", "N"), "let": ("let", "1", "N"),
    "ber": ("ber", "1", "N"), "bery": ("bery", "1", "N"), "ny": ("ny", "1", "A"),
    "ine": ("ine", "2", "N"), "eer": ("eer", "2", "N"), "hold": ("hold", "s", "N"),
    "like": ("like", "1", "A"),
}


def suffix_info(name):
    if name in DERIV:
        text, tag, cat, follow = DERIV[name]
        return text, tag, cat, follow
    text, tag, cat = MINOR[name]
    return text, tag, cat, []


def join(prev, nxt):
    """Applies surface spelling to the morpheme before `nxt`."""
    if prev.endswith("ify") and nxt == "ation":
        return prev[:-1] + "ic"
    consonant_y = prev.endswith("y") and (len(prev) == 1 or prev[-2] not in VOWELS)
    if consonant_y and nxt in ("ian", "ic", "ify", "ical"):
        return prev[:-1]
    if consonant_y and nxt in ("ship", "hood", "dom", "ism"):
        return prev
    if prev.endswith("able") and nxt.startswith("i"):
        return prev[:-4] + "abil"
    if prev.endswith("ible") and nxt.startswith("i"):
        return prev[:-4] + "ibil"
    if nxt[0] in VOWELS and prev.endswith("e") and not prev.endswith("ee") and len(prev) > 2:
        return prev[:-1]
    if consonant_y and nxt[0] != "i":
        return prev[:-1] + "i"
    return prev


def spell(parts, double=False):
    """parts: list of (text, tag, kind) with kind in {p, s, d, i}.
    Returns segments as (surface text, tag)."""
    out = [list(p) for p in parts]
    for i in range(len(out) - 1):
        cur, nxt = out[i], out[i + 1]
        if cur[2] == "p":
            continue
        if double and cur[2] == "s" and nxt[0][0] in VOWELS:
            nxt[0] = cur[0][-1] + nxt[0]
            continue
        cur[0] = join(cur[0], nxt[0])
    return [(t, g) for t, g, _ in out]


def plural(stem_surface, flags):
    last = stem_surface
    if last.endswith(("s", "x", "z", "ch", "sh")) or ("o" in flags and last.endswith("o")):
        return "es"
    if last.endswith("y") and last[-2] not in VOWELS:
        return "es"
    return "s"


def inflections(cat, flags, last_text):
    if cat == "N" and last_text in ("ness", "ism"):
        return []
    if cat == "N":
        return [plural(last_text, flags)]
    if cat == "V":
        return [plural(last_text, flags), "ed", "ing"]
    if cat == "A" and "c" in flags:
        return ["er", "est"]
    return []


def emit(words, parts, double, flags, cat, base_flags_for_infl):
    segs = spell(parts, double)
    words.append(segs)
    last_text = parts[-1][0]
    for infl in inflections(cat, base_flags_for_infl, last_text):
        words.append(spell(parts + [(infl, "i", "i")], double))


def generate():
    words = []
    for line in STEMS.splitlines():
        text, cat, sufs, prefs, flags = line.split()
        sufs = [] if sufs == "-" else sufs.split(",")
        prefs = [] if prefs == "-" else prefs.split(",")
        flags = "" if flags == "-" else flags
        double = "d" in flags
        prefix_options = [None] + prefs
        for pref in prefix_options:
            head = [(pref, "1", "p")] if pref else []
            stem = [(text, "s", "s")]
            emit(words, head + stem, double, flags, cat, flags)
            for s1 in sufs:
                t1, g1, c1, follow = suffix_info(s1)
                chain = head + stem + [(t1, g1, "d")]
                emit(words, chain, double, flags, c1, "")
                for s2 in follow:
                    t2, g2, c2, _ = suffix_info(s2)
                    emit(words, chain + [(t2, g2, "d")], double, flags, c2, "")
    for line in COMPOUNDS.splitlines():
        a, b = line.split()
        parts = [(a, "s", "p"), (b, "s", "s")]
        emit(words, parts, False, "", "N", "")
    for line in EXTRA.splitlines():
        surface, *segs = line.split()
        words.append([tuple(s.split("/")) for s in segs])
    return words


def main():
    seen = {}
    for segs in generate():
        surface = "".join(t for t, _ in segs)
        if surface not in seen:
            seen[surface] = segs
    print("# Constructed English lexicon: surface<TAB>morpheme/tag ...")
    print("# tags: s stem, 1 stress-neutral affix, 2 stress-affecting affix, i inflection")
    print("# generated by make_lexicon.py")
    for surface in sorted(seen):
        segs = seen[surface]
        print(surface + "\t" + " ".join(f"{t}/{g}" for t, g in segs))


if __name__ == "__main__":
    main()
