from types import ModuleType

from . import bound, check, learn, pca, sections


def get_commands() -> list[ModuleType]:
    return [
        sections,
        pca,
        learn,
        check,
        bound,
    ]
