import pytest

from cnlkit.chronos import Interval, Timestamp
from cnlkit.lexicon import seed_acronyms, seed_aliases, seed_lexicon
from cnlkit.parser import Parser
from cnlkit.surface import preprocess, segment, tokenize

UTT_TS = Timestamp(2014, 6, 2, 1, 3, 48)
UTT = Interval.point(UTT_TS)
ACST = 9 * 60 + 30  # +09:30


@pytest.fixture(scope="session")
def lex():
    return seed_lexicon()


@pytest.fixture(scope="session")
def aliases(lex):
    return seed_aliases(lex)


@pytest.fixture(scope="session")
def acronyms():
    return seed_acronyms()


@pytest.fixture(scope="session")
def parser(lex):
    return Parser(lex)


@pytest.fixture(scope="session")
def pipe(aliases, acronyms):
    def _pipe(text: str):
        return preprocess(segment(tokenize(text))[0], aliases, acronyms)

    return _pipe


# the running-example corpus: (text, expected parse count)
CORPUS = [
    ("The woman stood in the house.", 1),
    ("The boy slept on Monday.", 1),
    ("The woman in the car read the message on the sign.", 2),
    ("The woman gave the man the document.", 1),
    ("Who gave the document to the boy?", 1),
    ("What did the woman read?", 1),
    ("What did the boy do?", 1),
    ("When did she read it?", 1),
    ("What region is she in?", 1),
    ("Did anyone see the woman?", 1),
    ("Show merchant ship situation report on MR41_PAN-EAV", 1),
    ("Show commercial aircraft situation report on NAT57_FL310", 1),
    ("Michael said that the woman read the document.", 1),
    ("Michael told Kerry that the woman read the document.", 1),
    ("The old man from Blueland slept.", 1),
    ("The old man and the woman slept.", 1),
    ("Several friendly women stood in the house.", 1),
    ("Some ancient old men slept.", 1),
    ("The sick woman 's house stood in the region.", 1),
    ("Dale 's car stood in the region.", 1),
    ("Women stand.", 1),
    ("All women always read all documents.", 1),
    ("If all women did not see the car then all women did not see the driver.", 1),
    ("The woman did not read the document.", 1),
    ("Andrew White is the Prime Minister.", 1),
]
