#!/usr/bin/env python3
"""Regenerate the packaged seed lexicon, acronym and alias files.

The seed covers the whole test corpus plus high-frequency open- and
closed-class vocabulary.  Word lists are deduplicated here; the loader
would reject duplicate (surface, pos) lines.  Run from the repo root:

    python3 scripts/build_seed_lexicon.py
"""

from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "src" / "cnlkit" / "data"

# --- nouns: (word, taxon, gender) -----------------------------------------

GENDERED_PEOPLE = [
    ("woman", "female"), ("man", "male"), ("boy", "male"), ("girl", "female"),
    ("father", "male"), ("mother", "female"), ("son", "male"), ("daughter", "female"),
    ("brother", "male"), ("sister", "female"), ("uncle", "male"), ("aunt", "female"),
    ("husband", "male"), ("wife", "female"), ("king", "male"), ("queen", "female"),
    ("prince", "male"), ("princess", "female"), ("gentleman", "male"), ("lady", "female"),
    ("grandfather", "male"), ("grandmother", "female"), ("nephew", "male"), ("niece", "female"),
    ("widow", "female"), ("widower", "male"), ("actor", "male"), ("actress", "female"),
]

PEOPLE = """person child baby infant adult teenager youth elder driver friend teacher
student doctor nurse lawyer judge soldier officer captain general pilot sailor farmer
worker engineer scientist artist singer dancer writer author poet president leader
manager director chief guard policeman fireman neighbour stranger guest visitor
customer client patient victim witness thief criminal hero champion player coach
referee hunter fisherman baker butcher barber tailor trader banker clerk secretary
assistant colleague partner cousin citizen resident owner tenant landlord employer
employee expert specialist professor surgeon dentist chemist pharmacist librarian
journalist reporter editor photographer designer architect carpenter plumber
electrician mechanic technician operator inspector detective agent spy messenger
servant cook waiter chef guide interpreter translator speaker chairman minister
senator governor mayor ambassador diplomat priest monk nun bishop pope prophet
pilgrim beggar orphan twin crowd madam mister junior passenger
pedestrian cyclist swimmer runner climber traveller tourist explorer pioneer settler
native volunteer recruit veteran prisoner hostage refugee survivor rescuer commander
lieutenant sergeant corporal private marine pirate smuggler trafficker rebel
protester rioter supporter opponent rival enemy ally """.split()

ANIMALS = """dog cat horse cow bull goat pig chicken duck bird eagle hawk owl shark
whale dolphin seal bear wolf fox rabbit rat snake lizard frog turtle insect bee ant
spider butterfly lion tiger elephant monkey camel donkey mule kangaroo crocodile
penguin parrot pigeon crow swan falcon bat squirrel hedgehog badger otter beaver
moose bison buffalo leopard cheetah panther hyena gorilla chimpanzee zebra giraffe
rhinoceros hippopotamus octopus squid crab lobster shrimp oyster snail worm moth
beetle wasp dragonfly grasshopper cricket scorpion pony lamb calf chick kitten puppy
mouse goose sheep deer fish ox""".split()

VEHICLES = """car truck bus train tram bicycle motorcycle ship boat ferry yacht canoe
submarine airplane helicopter jet rocket tank ambulance taxi van lorry trailer
carriage wagon sled tractor vessel freighter tanker destroyer frigate cruiser
carrier barge tug raft glider balloon airship drone convoy fleet
aircraft""".split()

STRUCTURES = """house building tower bridge tunnel road street highway path wall fence
gate door window roof floor ceiling room kitchen bathroom bedroom hall staircase
garage barn shed factory warehouse office shop store market school university college
hospital clinic church temple mosque castle palace fort fortress base station airport
harbour port dock pier lighthouse farm mill mine well dam canal sign monument statue
fountain theatre cinema museum library hotel restaurant cafe bar prison court bank
embassy cottage cabin hut tent camp headquarters barracks hangar runway platform
terminal depot refinery granary stable kennel aquarium zoo stadium
arena gymnasium pool playground parliament senate ministry agency
consulate observatory laboratory workshop studio gallery chapel cathedral abbey
monastery shrine tomb cemetery graveyard""".split()

DOCUMENTS = """document message letter note report book newspaper magazine journal
article essay story novel poem map chart diagram list menu ticket passport licence
certificate contract agreement treaty law rule order command request question answer
record file page paragraph sentence word email telegram card postcard invitation
receipt invoice bill form survey questionnaire manual handbook dictionary
encyclopedia atlas catalogue brochure pamphlet leaflet poster notice bulletin memo
summary transcript diary logbook register schedule timetable agenda minutes petition
declaration constitution amendment clause statute decree warrant verdict testimony
statement affidavit deed manuscript draft copy edition volume chapter
index appendix footnote caption headline column review critique commentary editorial
phd""".split()

REGIONS = """region country nation state province county district city town village
suburb area zone territory continent island peninsula coast border land field forest
jungle desert mountain hill valley plain plateau river lake sea ocean bay gulf beach
shore cliff cave canyon gorge swamp marsh meadow prairie tundra glacier volcano reef
lagoon strait channel delta estuary basin watershed horizon frontier homeland
wilderness countryside outskirts downtown neighbourhood quarter block intersection
crossroads junction square plaza park garden orchard vineyard plantation ranch
pasture paddock outback bush highland lowland midland heartland coastline seaside
waterfront mainland archipelago atoll cape headland ridge summit peak slope foothill
riverbank""".split()

OBJECTS = """table chair bed desk sofa bench lamp light candle clock watch mirror
picture painting photograph camera phone telephone computer screen keyboard radio
television machine engine motor wheel tyre tool hammer nail screw saw axe knife fork
spoon plate bowl cup glass bottle jar box bag basket bucket barrel crate rope chain
wire cable pipe tube stick pole beam board plank brick stone rock sand soil mud dust
ash coal oil gas petrol fuel water ice snow rain wind storm cloud sky sun moon star
planet fire flame smoke steam gold silver iron steel copper metal wood money coin
key lock bell flag drum guitar piano violin ball toy doll kite umbrella hat cap coat
jacket shirt dress skirt shoe boot sock glove scarf belt button pocket ring necklace
bracelet crown sword shield spear arrow gun rifle pistol cannon bomb bullet weapon
armour helmet food bread cake biscuit pie soup meat beef pork egg milk butter cheese
cream sugar salt pepper spice fruit apple banana grape lemon cherry peach pear plum
berry melon vegetable potato tomato onion carrot bean pea corn rice wheat tea coffee
juice wine beer tree plant flower rose grass leaf branch root seed blanket pillow
curtain carpet rug towel soap brush comb razor scissors needle thread cloth fabric
leather wool silk cotton paper ink pen pencil chalk crayon eraser ruler 
air telescope microscope binoculars magnet battery bulb switch socket plug fuse gear
lever pulley valve pump fan heater stove oven fridge freezer kettle pan
pot tray jug flask thermos ladder shovel spade rake hoe plough sickle scythe anchor
oar paddle sail mast rudder propeller cockpit cargo freight luggage suitcase trunk
parcel package bundle load stack pile heap mound lump chunk slab sheet strip ribbon
tape badge medal trophy prize gift present souvenir ornament jewel gem diamond pearl
ruby emerald sapphire marble granite clay cement concrete plaster tile shingle
gravel pebble boulder""".split()

ABSTRACT = """idea plan thought dream hope fear love hate anger joy sorrow pain
pleasure truth lie fact opinion belief faith doubt reason cause effect result purpose
goal aim task job work duty right freedom peace war battle fight attack defence
victory defeat danger risk safety help aid support advice warning threat promise
offer deal trade price cost value profit loss wealth poverty power strength weakness
skill talent knowledge wisdom science art music song dance game sport race journey
trip voyage visit arrival departure meeting party ceremony wedding funeral birth
death history future time moment hour minute second morning afternoon evening night
midnight noon season spring summer autumn winter weather climate temperature heat
cold darkness shadow colour shape size weight height depth length width speed
distance direction position place location situation condition problem solution
mystery secret surprise accident event incident crisis emergency disaster luck
chance opportunity choice decision action movement change growth progress success
failure beginning end middle part whole piece half quarter number amount quantity
quality kind sort type group team crew staff army navy force unit member society
community family couple pair nationality allegiance course bearing
heading route mission operation manoeuvre patrol surveillance
reconnaissance intelligence strategy tactic logistics supply demand shortage surplus
budget economy industry commerce business company firm corporation organisation
institution department division sector revenue income
expense debt credit loan mortgage insurance pension salary wage bonus tax tariff
fine penalty reward incentive motive intention attitude behaviour habit
custom tradition culture language dialect accent grammar vocabulary meaning sense
context """.split()

TEMPORAL_NOUNS = [
    ("today", "deictic"), ("yesterday", "deictic"), ("tomorrow", "deictic"),
    ("week", "unit"), ("month", "unit"), ("year", "unit"), ("day", "unit"),
    ("decade", "unit"), ("century", "unit"), ("o'clock", "oclock"),
]

WEEKDAYS = ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"]
MONTHS = ["January", "February", "March", "April", "May", "June",
          "July", "August", "September", "October", "November", "December"]

PROPER = [
    # (surface, taxon, gender)
    ("Michael", "person", "male"),
    ("Kerry", "person", None),
    ("Dale", "person", None),
    ("Smith", "person", None),
    ("Andrew_White", "person", "male"),
    ("Blueland", "region", None),
    ("Redland", "region", None),
    ("Greyland", "region", None),
    ("becker_bender_AFB", "structure", None),
    ("MR41_PAN-EAV", "vehicle", None),
    ("NAT57_FL310", "vehicle", None),
]

# --- verbs: (lemma, frame, aktionsart) -------------------------------------

VERBS_SPECIAL = [
    ("stand", "intransitive", "state"),
    ("sleep", "intransitive", "activity"),
    ("read", "transitive", "activity"),
    ("give", "ditransitive", "accomplishment"),
    ("see", "transitive", "achievement"),
    ("say", "report", "activity"),
    ("tell", "report", "activity"),
    ("do", "transitive", "activity"),
    ("show", "directive", "accomplishment"),
]

INTRANSITIVE = """sit lie walk swim jump dance laugh cry weep smile frown sneeze
cough yawn breathe wait stay remain arrive depart travel fall rise sink float drift
melt explode vanish disappear appear emerge escape flee rest relax fail succeed die
live exist happen occur continue matter shine glow sparkle tremble shiver kneel
crawl stumble slip collapse faint recover retire resign graduate vote march parade
camp hike jog sprint gallop trot wander roam stroll pause hesitate linger hurry
rush""".split()

STATE_VERBS = """like love hate dislike trust distrust fear enjoy prefer own possess
contain include resemble deserve admire respect envy pity adore despise cherish
""".split()

TRANSITIVE = """watch hear smell taste touch feel hold carry lift raise lower push
pull drag throw catch drop take bring fetch send receive get keep put place set lay
move turn open close shut lock unlock break fix repair build destroy make create
produce grow plant cut chop slice tear fold bend shake hit strike beat kick punch
slap bite scratch rub wash clean wipe sweep polish paint draw write type print copy
sign mark erase eat drink cook bake boil fry serve feed buy sell pay spend save earn
borrow lend owe steal rob find seek discover explore examine inspect study learn
teach train test check measure count calculate add solve answer ask call name
describe explain announce declare mention suggest propose recommend advise warn
promise offer accept refuse reject deny admit confess discuss debate consider
believe know understand remember forget imagine suppose expect wish want need
require demand request order command allow permit forbid prevent protect defend
attack invade capture seize arrest release free rescue help assist support encourage
praise thank blame criticise punish reward forgive greet welcome invite visit meet
join leave abandon follow lead guide direct drive ride sail steer park load unload
pack fill empty pour spill mix stir spread cover wrap tie fasten attach connect
separate divide share display reveal conceal bury dig track monitor observe detect
identify locate intercept escort deploy recall dispatch summon assign
appoint elect nominate choose select approve authorise cancel postpone delay
schedule organise arrange prepare complete finish start begin stop launch land dock
board embark evacuate transport deliver collect gather assemble dismantle install
remove replace adjust calibrate operate control navigate 
broadcast transmit relay
jam decode encode encrypt decrypt translate interpret verify confirm
dispute contest challenge investigate audit review revise edit
publish issue circulate distribute archive store retrieve delete restore backup
scan""".split()

# --- adjectives by order class ---------------------------------------------

ADJECTIVES = {
    "ordinal": "former latter final last next previous initial".split(),
    "noun": "merchant military naval civilian government".split(),
    "subjective": """nice lovely wonderful terrible awful horrible pleasant
        unpleasant delightful dreadful charming splendid""".split(),
    "evaluative": """good bad excellent important famous useful useless valuable
        worthless dangerous safe friendly hostile kind cruel brave clever stupid
        wise foolish honest loyal faithful gentle fierce calm angry happy sad proud
        humble polite rude careful careless patient eager curious serious funny
        strange odd rare special ordinary unusual typical beautiful ugly
        poor rich noble""".split(),
    "objective": """true false correct incorrect right wrong real accurate exact
        precise certain possible impossible likely unlikely necessary busy empty
        full open closed public private legal illegal official secret ready complete
        whole broken alive dead strong quick slow fast loud quiet bright dark heavy
        clean dirty dry wet hot warm cool smooth rough hard soft""".split(),
    "amplifier": "utter total absolute sheer mere pure entire extreme".split(),
    "weak": """sick ill healthy tired weary hungry thirsty sleepy drunk sober
        injured wounded""".split(),
    "size": "big small large little huge tiny enormous vast giant immense great".split(),
    "girth": "fat thin thick slim slender broad narrow wide stout plump".split(),
    "height": "tall short high low deep shallow long".split(),
    "shape": """round square flat curved straight crooked oval circular triangular
        rectangular pointed sharp blunt""".split(),
    "age": "old young new ancient modern recent elderly aged fresh antique".split(),
    "century": "medieval victorian colonial prehistoric renaissance".split(),
    "participle": """running standing written painted armed loaded burning flying
        sailing smiling frozen hidden stolen abandoned retired married
        educated united""".split(),
    "colour": """red blue green yellow black white grey brown orange purple pink
        golden crimson scarlet violet turquoise""".split(),
    "compass": """northern southern eastern western northeastern northwestern
        southeastern southwestern central""".split(),
    "provenance": """foreign domestic local international French German British
        American Australian Chinese Japanese Russian Italian Spanish Indian
        African European Asian Panamanian""".split(),
    "religion": """religious sacred holy secular Christian Islamic Jewish Buddhist
        Hindu Catholic Protestant""".split(),
    "denominal": """wooden woollen silken commercial industrial agricultural
        chemical electrical mechanical musical medical political economic
        scientific historical cultural natural national royal""".split(),
}

CARDINAL_WORDS = [
    ("one", 1), ("two", 2), ("three", 3), ("four", 4), ("five", 5), ("six", 6),
    ("seven", 7), ("eight", 8), ("nine", 9), ("ten", 10), ("eleven", 11),
    ("twelve", 12), ("twenty", 20), ("thirty", 30), ("forty", 40), ("fifty", 50),
    ("hundred", 100), ("thousand", 1000),
]

ORDINAL_WORDS = [
    ("first", 1), ("second", 2), ("third", 3), ("fourth", 4), ("fifth", 5),
    ("sixth", 6), ("seventh", 7), ("eighth", 8), ("ninth", 9), ("tenth", 10),
    ("eleventh", 11), ("twelfth", 12),
]


def noun_line(word, taxon, gender=None, extra=""):
    feats = [f"taxon={taxon}", "mass_count=count", "number=singular"]
    if gender:
        feats.append(f"gender={gender}")
    if extra:
        feats.append(extra)
    return f"{word}\t{word}\tcommon_noun\t{';'.join(feats)}"


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    lines: list[str] = ["# seed lexicon: surface<TAB>lemma<TAB>pos<TAB>features"]
    seen: set[tuple[str, str]] = set()

    def add(line: str):
        surface, _, pos = line.split("\t")[:3]
        if (surface, pos) in seen:
            return
        seen.add((surface, pos))
        lines.append(line)

    for word, gender in GENDERED_PEOPLE:
        add(noun_line(word, "person", gender))
    for word in PEOPLE:
        add(noun_line(word, "person"))
    for word in ANIMALS:
        add(noun_line(word, "animal"))
    for word in VEHICLES:
        add(noun_line(word, "vehicle"))
    for word in STRUCTURES:
        add(noun_line(word, "structure"))
    for word in DOCUMENTS:
        add(noun_line(word, "document"))
    for word in REGIONS:
        add(noun_line(word, "region"))
    for word in OBJECTS:
        add(noun_line(word, "object"))
    for word in ABSTRACT:
        add(noun_line(word, "abstract"))
    for word, kind in TEMPORAL_NOUNS:
        add(f"{word}\t{word}\tcommon_noun\ttaxon=time_unit;temporal={kind};mass_count=count;number=singular")

    # folded multi-word atoms (registered so folding never yields OOV)
    add(noun_line("prime_minister", "person"))
    add(noun_line("merchant_ship", "vehicle"))
    add(noun_line("commercial_aircraft", "vehicle"))
    add(noun_line("situation_report", "document"))
    add(noun_line("air_force_base", "structure"))

    for day in WEEKDAYS:
        add(f"{day}\t{day}\tproper_noun\ttaxon=time_unit;temporal=weekday;number=singular")
    for month in MONTHS:
        add(f"{month}\t{month}\tproper_noun\ttaxon=time_unit;temporal=month;number=singular")
    add("AM\tAM\tcommon_noun\ttaxon=time_unit;temporal=meridiem;number=singular")
    add("PM\tPM\tcommon_noun\ttaxon=time_unit;temporal=meridiem;number=singular")

    for surface, taxon, gender in PROPER:
        feats = [f"taxon={taxon}", "number=singular"]
        if gender:
            feats.append(f"gender={gender}")
        add(f"{surface}\t{surface}\tproper_noun\t{';'.join(feats)}")

    # verbs
    for lemma, frame, ak in VERBS_SPECIAL:
        add(f"{lemma}\t{lemma}\tmain_verb\tframe={frame};aktionsart={ak}")
    for lemma in INTRANSITIVE:
        add(f"{lemma}\t{lemma}\tmain_verb\tframe=intransitive;aktionsart=activity")
    for lemma in STATE_VERBS:
        add(f"{lemma}\t{lemma}\tmain_verb\tframe=transitive;aktionsart=state")
    for lemma in TRANSITIVE:
        add(f"{lemma}\t{lemma}\tmain_verb\tframe=transitive;aktionsart=activity")
    # copula: explicit inflected forms
    add("be\tbe\tmain_verb\tframe=copula;aktionsart=state;tense=present")
    add("is\tbe\tmain_verb\tframe=copula;aktionsart=state;tense=present;agreement=third_singular")
    add("are\tbe\tmain_verb\tframe=copula;aktionsart=state;tense=present;agreement=plural")
    add("was\tbe\tmain_verb\tframe=copula;aktionsart=state;tense=past;agreement=third_singular")
    add("were\tbe\tmain_verb\tframe=copula;aktionsart=state;tense=past;agreement=plural")

    # adjectives
    for cls, words in ADJECTIVES.items():
        for w in words:
            add(f"{w}\t{w}\tadjective\tclass={cls};usage=attributive|predicative")

    # articles and determiners
    add("the\tthe\tarticle\tsubtype=definite")
    add("a\ta\tarticle\tsubtype=indefinite;number=singular")
    add("an\tan\tarticle\tsubtype=indefinite;number=singular")
    add("all\tall\tarticle\tsubtype=universal;number=plural")
    add("every\tevery\tarticle\tsubtype=universal;number=singular")
    add("some\tsome\tarticle\tsubtype=existential")
    add("this\tthis\tarticle\tsubtype=demonstrative;number=singular")
    add("that\tthat\tarticle\tsubtype=demonstrative;number=singular")
    add("these\tthese\tarticle\tsubtype=demonstrative;number=plural")
    add("those\tthose\tarticle\tsubtype=demonstrative;number=plural")
    add("'s\t's\tarticle\tsubtype=genitive")

    # pronouns
    add("she\tshe\tpronoun\tsubtype=personal;gender=female;number=singular;taxon=person")
    add("he\the\tpronoun\tsubtype=personal;gender=male;number=singular;taxon=person")
    add("it\tit\tpronoun\tsubtype=personal;gender=neuter;number=singular;taxon=physical")
    add("they\tthey\tpronoun\tsubtype=personal;number=plural")
    add("her\ther\tpronoun\tsubtype=personal;gender=female;number=singular;taxon=person")
    add("him\thim\tpronoun\tsubtype=personal;gender=male;number=singular;taxon=person")
    add("them\tthem\tpronoun\tsubtype=personal;number=plural")
    add("herself\therself\tpronoun\tsubtype=reflexive;gender=female;number=singular;taxon=person")
    add("himself\thimself\tpronoun\tsubtype=reflexive;gender=male;number=singular;taxon=person")
    add("itself\titself\tpronoun\tsubtype=reflexive;gender=neuter;number=singular")
    add("themselves\tthemselves\tpronoun\tsubtype=reflexive;number=plural")
    add("each_other\teach_other\tpronoun\tsubtype=reciprocal;number=plural")
    add("anyone\tanyone\tpronoun\tsubtype=indefinite;number=singular;taxon=person")
    add("anybody\tanybody\tpronoun\tsubtype=indefinite;number=singular;taxon=person")
    add("anything\tanything\tpronoun\tsubtype=indefinite;number=singular;taxon=physical")
    add("someone\tsomeone\tpronoun\tsubtype=indefinite;number=singular;taxon=person")
    add("something\tsomething\tpronoun\tsubtype=indefinite;number=singular;taxon=physical")

    # auxiliaries, negation, temporal quantification
    add("did\tdo\tauxiliary\ttense=past;subtype=do_support")
    add("does\tdo\tauxiliary\ttense=present;agreement=third_singular;subtype=do_support")
    add("do\tdo\tauxiliary\ttense=present;agreement=plural;subtype=do_support")
    add("not\tnot\tauxiliary\tsubtype=negator")
    add("always\talways\tauxiliary\tsubtype=temporal_quantifier")

    # modals
    for m in ["will", "would", "can", "could", "may", "might", "must", "shall", "should", "cannot"]:
        add(f"{m}\t{m}\tmodal\t")

    # prepositions
    for p in ["in", "on", "at", "from", "to", "of", "before", "after", "during",
              "under", "over", "near", "behind", "beside", "between", "within",
              "against", "with", "by", "for", "into", "onto", "through", "across",
              "along", "around", "above", "below", "towards", "until"]:
        add(f"{p}\t{p}\tpreposition\t")

    # conjunctions
    add("and\tand\tconjunction\tsubtype=coordinating")
    add("or\tor\tconjunction\tsubtype=coordinating")
    add("but\tbut\tconjunction\tsubtype=coordinating")
    add("if\tif\tconjunction\tsubtype=conditional")
    add("then\tthen\tconjunction\tsubtype=conditional")
    add("that\tthat\tconjunction\tsubtype=complementizer")
    add("because\tbecause\tconjunction\tsubtype=subordinating")
    add("while\twhile\tconjunction\tsubtype=subordinating")

    # wh-words
    add("who\twho\twh_word\tsubtype=person")
    add("whom\twhom\twh_word\tsubtype=person")
    add("what\twhat\twh_word\tsubtype=thing")
    add("when\twhen\twh_word\tsubtype=time")
    add("where\twhere\twh_word\tsubtype=place")
    add("which\twhich\twh_word\tsubtype=which")
    add("whose\twhose\twh_word\tsubtype=possessor")

    # directionals
    for d in ["north", "south", "east", "west", "northeast", "northwest",
              "southeast", "southwest", "upward", "downward", "leftward",
              "rightward", "forward", "backward", "inward", "outward"]:
        add(f"{d}\t{d}\tdirectional\t")

    # numerals
    for w, v in CARDINAL_WORDS:
        add(f"{w}\t{w}\tcardinal\tvalue={v}")
    add("several\tseveral\tcardinal\tsubtype=indefinite")
    add("many\tmany\tcardinal\tsubtype=indefinite")
    add("few\tfew\tcardinal\tsubtype=indefinite")
    add("once\tonce\tcardinal\tsubtype=multiplicative;value=1")
    add("twice\ttwice\tcardinal\tsubtype=multiplicative;value=2")
    add("thrice\tthrice\tcardinal\tsubtype=multiplicative;value=3")
    for w, v in ORDINAL_WORDS:
        add(f"{w}\t{w}\tordinal\tvalue={v}")

    (DATA / "lexicon.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    acronyms = [
        "# acronym<TAB>expansion words<TAB>position",
        "Dr\tdoctor\tpre_nominal",
        "Mr\tmister\tpre_nominal",
        "Prof\tprofessor\tpre_nominal",
        "Capt\tcaptain\tpre_nominal",
        "Gen\tgeneral\tpre_nominal",
        "Jr\tjunior\tpost_nominal",
        "PhD\tphd\tpost_nominal",
        "AFB\tair force base\tfree",
        "UN\tunited nations\tfree",
    ]
    (DATA / "acronyms.tsv").write_text("\n".join(acronyms) + "\n", encoding="utf-8")

    aliases = [
        "# word word ...<TAB>atom",
        "Andrew White\tAndrew_White",
        "Prime Minister\tprime_minister",
        "prime minister\tprime_minister",
        "merchant ship\tmerchant_ship",
        "commercial aircraft\tcommercial_aircraft",
        "situation report\tsituation_report",
        "air force base\tair_force_base",
        "Becker Bender air force base\tbecker_bender_AFB",
        "each other\teach_other",
        "can't\tcannot",
    ]
    (DATA / "aliases.tsv").write_text("\n".join(aliases) + "\n", encoding="utf-8")
    print(f"wrote {len(lines) - 1} lexicon lines to {DATA}")


if __name__ == "__main__":
    main()
