from typing import Sequence


# "A", "A and B", "A, B and C"; no serial comma
def format_list(names: Sequence[str]) -> str:
    if not names:
        return ""
    if len(names) == 1:
        return names[0]
    return ", ".join(names[:-1]) + " and " + names[-1]
