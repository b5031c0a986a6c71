"""Suffix-stripping stemmer.

The core is the original Porter (1980) algorithm. Two additions sit on top:

* gradable adjectives lose comparative/superlative endings when the
  remaining base is a known adjective (``cleaner`` -> ``clean``,
  ``bigger`` -> ``big``), which plain Porter leaves alone;
* the combined transform is iterated to a fixed point so that
  ``stem(stem(w)) == stem(w)`` holds for every input.
"""

from functools import lru_cache

from .defaults import data_path

_VOWELS = frozenset("aeiou")


def _load_bases():
    text = data_path("gradable_adjectives.txt").read_text("utf-8")
    return frozenset(
        line.strip().lower() for line in text.splitlines() if line.strip() and not line.startswith("#")
    )


GRADABLE_ADJECTIVES = _load_bases()


class PorterStemmer:
    def _cons(self, w, i):
        ch = w[i]
        if ch in _VOWELS:
            return False
        if ch == "y":
            return i == 0 or not self._cons(w, i - 1)
        return True

    def _m(self, stem):
        """Number of VC sequences in ``stem``."""
        n = 0
        i = 0
        length = len(stem)
        while i < length and self._cons(stem, i):
            i += 1
        while i < length:
            while i < length and not self._cons(stem, i):
                i += 1
            if i >= length:
                break
            while i < length and self._cons(stem, i):
                i += 1
            n += 1
        return n

    def _has_vowel(self, stem):
        return any(not self._cons(stem, i) for i in range(len(stem)))

    def _double_cons(self, w):
        return len(w) >= 2 and w[-1] == w[-2] and self._cons(w, len(w) - 1)

    def _cvc(self, w):
        if len(w) < 3:
            return False
        if not (self._cons(w, len(w) - 3) and not self._cons(w, len(w) - 2) and self._cons(w, len(w) - 1)):
            return False
        return w[-1] not in "wxy"

    def _replace(self, w, rules, min_m):
        for suffix, repl in rules:
            if w.endswith(suffix):
                stem = w[: len(w) - len(suffix)]
                if self._m(stem) > min_m:
                    return stem + repl
                return w
        return w

    def _step1a(self, w):
        if w.endswith("sses"):
            return w[:-2]
        if w.endswith("ies"):
            return w[:-2]
        if w.endswith("ss"):
            return w
        if w.endswith("s"):
            return w[:-1]
        return w

    def _step1b(self, w):
        if w.endswith("eed"):
            if self._m(w[:-3]) > 0:
                return w[:-1]
            return w
        for suffix in ("ed", "ing"):
            if w.endswith(suffix):
                stem = w[: -len(suffix)]
                if not self._has_vowel(stem):
                    return w
                w = stem
                if w.endswith(("at", "bl", "iz")):
                    return w + "e"
                if self._double_cons(w) and w[-1] not in "lsz":
                    return w[:-1]
                if self._m(w) == 1 and self._cvc(w):
                    return w + "e"
                return w
        return w

    def _step1c(self, w):
        if w.endswith("y") and self._has_vowel(w[:-1]):
            return w[:-1] + "i"
        return w

    _STEP2 = (
        ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
        ("izer", "ize"), ("abli", "able"), ("alli", "al"), ("entli", "ent"),
        ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
        ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
        ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
    )
    _STEP3 = (
        ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
        ("ical", "ic"), ("ful", ""), ("ness", ""),
    )
    _STEP4 = (
        "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment",
        "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
    )

    def _step2(self, w):
        # longest suffix first within a shared ending is implied by the table order
        for suffix, repl in sorted(self._STEP2, key=lambda r: -len(r[0])):
            if w.endswith(suffix):
                stem = w[: -len(suffix)]
                return stem + repl if self._m(stem) > 0 else w
        return w

    def _step3(self, w):
        return self._replace(w, self._STEP3, 0)

    def _step4(self, w):
        for suffix in sorted(self._STEP4, key=len, reverse=True):
            if w.endswith(suffix):
                stem = w[: -len(suffix)]
                if self._m(stem) <= 1:
                    return w
                if suffix == "ion" and not stem.endswith(("s", "t")):
                    return w
                return stem
        return w

    def _step5(self, w):
        if w.endswith("e"):
            stem = w[:-1]
            m = self._m(stem)
            if m > 1 or (m == 1 and not self._cvc(stem)):
                w = stem
        if w.endswith("ll") and self._m(w) > 1:
            w = w[:-1]
        return w

    def stem(self, word):
        w = word.lower()
        if len(w) <= 2:
            return w
        w = self._step1a(w)
        w = self._step1b(w)
        w = self._step1c(w)
        w = self._step2(w)
        w = self._step3(w)
        w = self._step4(w)
        w = self._step5(w)
        return w


_porter = PorterStemmer()


def strip_degree(word, bases=GRADABLE_ADJECTIVES):
    """Remove a comparative/superlative ending if what remains is a known adjective."""
    for suffix in ("est", "er"):
        if word.endswith(suffix) and len(word) > len(suffix) + 1:
            base = word[: -len(suffix)]
            candidates = [base, base + "e"]
            if len(base) >= 2 and base[-1] == base[-2]:
                candidates.append(base[:-1])
            if base.endswith("i"):
                candidates.append(base[:-1] + "y")
            for cand in candidates:
                if cand in bases:
                    return cand
    return word


@lru_cache(maxsize=65536)
def stem(word):
    """Lowercase root of ``word``; idempotent.

    Tokens that are not purely alphabetic (numbers, ``new-york``,
    merged phrases like ``a_lot``) are only lowercased.
    """
    w = word.lower()
    if not w.isalpha() or not w.isascii():
        return w
    for _ in range(16):
        nxt = _porter.stem(strip_degree(w))
        if nxt == w:
            break
        w = nxt
    return w
