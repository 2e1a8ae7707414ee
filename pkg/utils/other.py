"""Miscellaneous Utilities

Contains the following functions:
    * unique_in_order

"""

from typing import Hashable, Iterable, List


def unique_in_order(items: Iterable[Hashable]) -> list:
    """
    Args:
        items (iterable): Items to deduplicate.

    Returns:
        list: `items` with every repeat of an earlier item removed, first
            occurrences kept in their original order

    """
    seen = set()
    unique: List[Hashable] = []

    for item in items:
        if item not in seen:
            seen.add(item)
            unique.append(item)

    return unique
