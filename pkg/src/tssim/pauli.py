"""Pauli words, weighted real sums of them, and fermionic ladder operators.

A word is a string over IXYZ. The leftmost character acts on the highest
qubit index, the rightmost on qubit 0, so "ZX" means kron(sigma_z, sigma_x)
and word order matches the usual sigma_{n-1} ... sigma_0 product notation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError, ParseError
from .linalg import kron

COEFF_DROP_TOL = 1e-15

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# |1><0| lowers the fermion number in this convention; its adjoint raises it.
_SIG_PLUS = np.array([[0, 0], [1, 0]], dtype=complex)
_SIG_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)


def _check_word(word: str) -> str:
    if not word or any(ch not in _SINGLE for ch in word):
        raise ContractError(f"invalid Pauli word {word!r}")
    return word


def word_matrix(word: str) -> np.ndarray:
    """Dense matrix of a Pauli word, leftmost letter on the top qubit."""
    _check_word(word)
    m = np.eye(1, dtype=complex)
    for ch in word:
        m = kron(m, _SINGLE[ch])
    return m


@dataclass
class PauliSum:
    """Real-weighted sum of equal-length Pauli words.

    Duplicate words are merged in first-appearance order and terms whose
    merged coefficient is below 1e-15 in magnitude are dropped.
    """

    terms: list = field(default_factory=list)
    n: int = 0

    def __init__(self, terms):
        merged: dict[str, float] = {}
        n = None
        for coeff, word in terms:
            if isinstance(coeff, complex) and abs(coeff.imag) > 0:
                raise ContractError("coefficients must be real")
            coeff = float(coeff)
            _check_word(word)
            if n is None:
                n = len(word)
            elif len(word) != n:
                raise ContractError(f"word {word!r} has length {len(word)}, expected {n}")
            merged[word] = merged.get(word, 0.0) + coeff
        if n is None:
            raise ContractError("a Pauli sum needs at least one term")
        self.n = n
        self.terms = [(c, w) for w, c in merged.items() if abs(c) >= COEFF_DROP_TOL]

    @property
    def dim(self) -> int:
        return 2**self.n

    def coefficient_one_norm(self) -> float:
        return float(sum(abs(c) for c, _ in self.terms))


def sum_matrix(s: PauliSum) -> np.ndarray:
    """Dense Hermitian matrix of the weighted word sum."""
    m = np.zeros((s.dim, s.dim), dtype=complex)
    for coeff, word in s.terms:
        m += coeff * word_matrix(word)
    return m


def normalize_for_encoding(s: PauliSum) -> tuple[PauliSum, float]:
    """Divide coefficients by their 1-norm; returns (rescaled sum, scale).

    The rescaled sum has coefficient 1-norm 1, so its matrix has spectral
    norm at most 1 and block-encoding preconditions hold.
    """
    if not s.terms:
        raise ContractError("cannot normalize an empty sum")
    scale = s.coefficient_one_norm()
    if scale <= 0.0:
        raise ContractError("coefficient 1-norm is zero")
    return PauliSum([(c / scale, w) for c, w in s.terms]), scale


def _jw_chain(core: np.ndarray, j: int, n: int) -> np.ndarray:
    if not 0 <= j < n:
        raise ContractError(f"mode index {j} out of range for {n} qubits")
    m = np.eye(1, dtype=complex)
    for _ in range(n - j - 1):
        m = kron(m, _SINGLE["I"])
    m = kron(m, core)
    for _ in range(j):
        m = kron(m, _SINGLE["Z"])
    return m


def jw_annihilation(j: int, n: int) -> np.ndarray:
    """Jordan-Wigner annihilation operator for mode j on n qubits."""
    return _jw_chain(_SIG_PLUS, j, n)


def jw_creation(j: int, n: int) -> np.ndarray:
    """Adjoint of jw_annihilation."""
    return _jw_chain(_SIG_MINUS, j, n)


# Minimal-basis hydrogen molecule after qubit reduction: 15 words on 4 qubits.
H2_TERMS = (
    (-0.81261, "IIII"),
    (0.171201, "IIIZ"),
    (0.16862325, "IIZI"),
    (-0.2227965, "IZII"),
    (0.171201, "IIZZ"),
    (0.12054625, "IZIZ"),
    (0.17434925, "ZIZI"),
    (0.04532175, "IXZX"),
    (0.04532175, "IYZY"),
    (0.165868, "IZZZ"),
    (0.12054625, "ZZIZ"),
    (-0.2227965, "ZZZI"),
    (0.04532175, "ZXZX"),
    (0.04532175, "ZYZY"),
    (0.165868, "ZZZZ"),
)


def h2_hamiltonian() -> PauliSum:
    """Embedded 4-qubit hydrogen-molecule Hamiltonian (15 Pauli terms)."""
    return PauliSum(H2_TERMS)


def parse_pauli_file(text: str) -> PauliSum:
    """Parse the '<float> <word>' per-line format.

    '#' starts a comment, blank lines are skipped, all words must have equal
    length. Errors carry 1-based line numbers.
    """
    entries = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected '<coefficient> <word>', got {raw!r}")
        coeff_text, word = parts
        try:
            coeff = float(coeff_text)
        except ValueError:
            raise ParseError(f"line {lineno}: bad coefficient {coeff_text!r}") from None
        if any(ch not in _SINGLE for ch in word):
            raise ParseError(f"line {lineno}: bad Pauli word {word!r}")
        if width is None:
            width = len(word)
        elif len(word) != width:
            raise ParseError(f"line {lineno}: word length {len(word)} != {width}")
        entries.append((coeff, word))
    if not entries:
        raise ParseError("no terms found")
    return PauliSum(entries)


def format_pauli_sum(s: PauliSum) -> str:
    """Inverse of parse_pauli_file, one term per line."""
    return "\n".join(f"{c!r} {w}" for c, w in s.terms) + "\n"
