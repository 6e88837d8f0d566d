import pytest

from mesia.lexer import StopWordList
from mesia.model import CodeCommentPair

MARK_USED_CODE = "public void markUsed(Entry entry) {\n    this.lastUsed = System.nanoTime();\n}"
MARK_USED_COMMENT = (
    "marks the specified entry as used by setting its last used time "
    "to the current time in nanoseconds."
)


@pytest.fixture(scope="session")
def stops():
    return StopWordList.default()


@pytest.fixture
def mark_used():
    return CodeCommentPair(id="markUsed", code=MARK_USED_CODE, comment=MARK_USED_COMMENT)
