"""Exception hierarchy shared by the library and the CLI."""


class MWSearchError(Exception):
    """Base class for all errors raised by :mod:`mwsearch`."""


class InvalidAlphabet(MWSearchError, ValueError):
    pass


class InvalidPattern(MWSearchError, ValueError):
    pass


class SymbolOutOfAlphabet(MWSearchError, ValueError):
    """A byte at ``index`` has ``value >= sigma``.

    Shift tables are indexed directly by symbol value, so such a byte
    would read outside the table.
    """

    def __init__(self, index: int, value: int, sigma: int | None = None):
        self.index = index
        self.value = value
        self.sigma = sigma
        bound = f" (sigma={sigma})" if sigma is not None else ""
        super().__init__(f"symbol {value} at index {index} is outside the alphabet{bound}")


class TableTooLarge(MWSearchError, MemoryError):
    def __init__(self, required_bytes: int, cap: int):
        self.required_bytes = required_bytes
        self.cap = cap
        super().__init__(
            f"shift table needs {required_bytes} bytes, which exceeds the cap of {cap} bytes"
        )


class InvalidSpec(MWSearchError, ValueError):
    pass


class ConfigInvalid(MWSearchError, ValueError):
    pass
