from typing import Iterable, List


def calc_percentage(part, total) -> str:
    """
    percentage string of part out of total
    """
    return "0%" if total == 0 else "{:.1f}%".format(100 * part / total)


def one_based(vertices: Iterable[int]) -> List[int]:
    return [v + 1 for v in vertices]
