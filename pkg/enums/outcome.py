from enum import Enum

from enums.emoji import Emoji


class Outcome(Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"
    DISAGREE = "oracle-disagreement"

    @property
    def emoji(self):
        return {
            Outcome.PASS: Emoji.SUCCESS,
            Outcome.FAIL: Emoji.FAILURE,
            Outcome.SKIP: Emoji.SKIPPED,
            Outcome.DISAGREE: Emoji.DISAGREEMENT,
        }[self].value
