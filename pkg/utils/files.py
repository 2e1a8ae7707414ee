"""Utilities for handling source files / paths

Contains the following functions:
    * clean_filepath
    * resolve_source
    * read_source
    * corpus_path

"""

import os
import unicodedata

CORPUS_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "corpus")


def clean_filepath(filepath: str) -> str:
    """Cleans filepath to return a filepath that follows local standard

    Normalises filepath to use forward slash rather than backslash, removes
    trailing slashes and composes unicode characters (NFC).

    Args:
        filepath (str): Filepath to be cleaned.

    Returns:
        str: cleaned `filepath`

    """
    filepath = unicodedata.normalize("NFC", filepath.replace("\\", "/"))

    while len(filepath) > 1 and filepath[-1] == "/":
        filepath = filepath[:-1]

    return filepath


def resolve_source(path: str, extension: str = ".lp") -> str:
    """Checks that `path` names a readable source file

    Args:
        path (str): Path to a source file.
        extension (str, optional): Expected file extension. Defaults to
            ".lp".

    Returns:
        str: cleaned `path`

    Raises:
        FileNotFoundError: If `path` is not an existing file.
        ValueError: If `path` does not end with `extension`.

    """
    path = clean_filepath(path)

    if not os.path.isfile(path):
        raise FileNotFoundError(f"{path} is not a file")

    if not path.endswith(extension):
        raise ValueError(f"{path} is not a {extension} file")

    return path


def read_source(path: str) -> str:
    """Reads a source file as NFC-normalised text

    Identifiers that look the same compare equal whichever way an editor
    encoded them.

    Raises:
        OSError: If the file cannot be read.
        UnicodeDecodeError: If the file is not UTF-8.

    """
    with open(path, "r", encoding="utf8") as file:
        return unicodedata.normalize("NFC", file.read())


def corpus_path(name: str, extension: str = ".lp") -> str:
    """
    Example:
        ``corpus_path("vectors")``  -->  ``".../corpus/vectors.lp"``

    """
    if not name.endswith(extension):
        name += extension
    return os.path.join(CORPUS_DIR, name)
