"""Labeled tensor words over the Novikov ring and their relation checkers.

A family of operations (differential m, morphism h, homotopy k) is a table
of structure constants: per arity, input generator patterns mapping to
integer combinations of single generators with a Novikov exponent t^d.
The module assembles the word differential, the morphism and homotopy
sums with their facet signs, and checks the defining relations on every
basis word inside a finite truncation window.

Degrees: a generator carries its co-index mu+ (number of positive Hessian
directions); a word of exponent d has mu = sum of co-indices + d*N_L and
cardinality q = number of factors.  Structure constants must shift mu by
2 - arity (differentials), 1 - arity (morphisms) or -arity (homotopies).
"""

from fractions import Fraction
from itertools import product as _iproduct

from .errors import BlockError, ShapeError
from .signs import suspension_parity

_ROLE_SHIFT = {"m": 2, "h": 1, "k": 0}


class TruncationWindow:
    """Finite window for relation checking: cardinality, energy, arity.

    Verdicts quantify over basis words of cardinality <= qmax; output
    terms of energy exponent > emax fall outside the window and are not
    inspected, so a pass is always 'pass up to E_max'.
    """

    def __init__(self, qmax=5, emax=8, lmax=6):
        self.qmax = qmax
        self.emax = emax
        self.lmax = lmax

    def to_obj(self):
        return {"qmax": self.qmax, "emax": self.emax, "lmax": self.lmax}

    def __repr__(self):
        return "TruncationWindow(qmax=%d, emax=%d, lmax=%d)" % (
            self.qmax,
            self.emax,
            self.lmax,
        )


class Generator:
    def __init__(self, sym, coidx, label="f"):
        self.sym = sym
        self.coidx = int(coidx)
        self.label = tuple(label) if isinstance(label, (list, tuple)) else label

    def __repr__(self):
        return "Generator(%r, %d, %r)" % (self.sym, self.coidx, self.label)


class OperationFamily:
    """Immutable table of structure constants for one role.

    ``ops``: {arity: {input syms tuple: {(out sym, d): int coefficient}}}.
    """

    def __init__(
        self,
        role,
        generators,
        ops,
        n=2,
        NL=2,
        c=0,
        positive_energy=True,
        suspended=False,
    ):
        if role not in _ROLE_SHIFT:
            raise ShapeError("role must be one of m/h/k, got %r" % (role,))
        self.role = role
        self.n = n
        self.NL = NL
        self.c = c
        self.gens = {g.sym: g for g in generators}
        self.positive_energy = positive_energy
        self.suspended = suspended
        table = {}
        missing = []
        for l, rules in ops.items():
            l = int(l)
            table[l] = {}
            for pattern, outs in rules.items():
                pattern = tuple(pattern)
                if outs is None:
                    missing.append((l, pattern))
                    continue
                acc = {}
                for sym, d, coef in outs:
                    if coef is None:
                        missing.append((l, pattern))
                        continue
                    key = (sym, int(d))
                    acc[key] = acc.get(key, 0) + int(coef)
                table[l][pattern] = {k: v for k, v in acc.items() if v}
        if missing:
            raise ShapeError(
                "unfilled structure constants: %s"
                % ", ".join("arity %d at %r" % mp for mp in missing)
            )
        self.ops = table
        self._validate()

    def _validate(self):
        for g in self.gens.values():
            if not 0 <= g.coidx <= self.n:
                raise ShapeError(
                    "co-index of %r outside 0..%d" % (g.sym, self.n)
                )
        shift = _ROLE_SHIFT[self.role]
        for l, rules in self.ops.items():
            for pattern, outs in rules.items():
                if len(pattern) != l:
                    raise ShapeError("pattern %r is not arity %d" % (pattern, l))
                for sym in pattern:
                    if sym not in self.gens:
                        raise ShapeError("unknown generator %r" % (sym,))
                mu_in = sum(self.gens[s].coidx for s in pattern)
                for (sym, d), coef in outs.items():
                    if sym not in self.gens:
                        raise ShapeError("unknown generator %r" % (sym,))
                    if self.positive_energy and d < 0:
                        raise ShapeError(
                            "negative energy exponent t^%d in arity %d" % (d, l)
                        )
                    mu_out = self.gens[sym].coidx + d * self.NL
                    if mu_out - mu_in != shift - l:
                        raise ShapeError(
                            "degree law broken at arity %d, %r -> %r t^%d: "
                            "mu shift %d, expected %d"
                            % (l, pattern, sym, d, mu_out - mu_in, shift - l)
                        )

    def arities(self):
        return sorted(l for l, rules in self.ops.items() if rules)

    def mu(self, sym):
        return self.gens[sym].coidx

    def word_mu(self, gens, d=0):
        return sum(self.gens[s].coidx for s in gens) + d * self.NL

    def apply(self, l, pattern):
        """Structure constants at one arity and input pattern."""
        return self.ops.get(l, {}).get(tuple(pattern), {})

    def validate_word(self, gens):
        """Enforce the ordered-block constraint on function labels."""
        prev = None
        for s in gens:
            g = self.gens.get(s)
            if g is None:
                raise BlockError("unknown generator %r" % (s,))
            if g.label == "f":
                continue
            j1, j2 = g.label
            if not j1 < j2 <= self.c:
                raise BlockError("bad interval label %r on %r" % (g.label, s))
            if prev is not None and prev > j1:
                raise BlockError(
                    "interval labels out of order: %r then %r" % (prev, (j1, j2))
                )
            prev = j2


def basis_words(fam, window):
    """All block-valid generator tuples with 1 <= q <= window.qmax."""
    syms = sorted(fam.gens)
    out = []
    for q in range(1, window.qmax + 1):
        for gens in _iproduct(syms, repeat=q):
            try:
                fam.validate_word(gens)
            except BlockError:
                continue
            out.append(gens)
    return out


# -- combinations ------------------------------------------------------------


def _add_term(acc, gens, d, coef):
    if not coef:
        return
    key = (gens, d)
    c = acc.get(key, 0) + coef
    if c:
        acc[key] = c
    elif key in acc:
        del acc[key]


def _sub(a, b):
    out = dict(a)
    for key, c in b.items():
        _add_term(out, key[0], key[1], -c)
    return out


def _truncate(comb, emax):
    return {k: v for k, v in comb.items() if k[1] <= emax}


# -- the word differential ---------------------------------------------------


def delta(fam, gens, d=0, suspended=None):
    """delta applied to one word: sum over positions j and arities l of
    the facet sign times the Koszul sign times the structure constants.

    Unsuspended sign parity for the (j, l) term:
    (q_out - j)*l + (j - 1) + l*(mu of the prefix); suspended families
    instead use the shifted prefix degree alone.
    """
    if fam.role != "m":
        raise ShapeError("delta needs a differential family")
    if suspended is None:
        suspended = fam.suspended
    fam.validate_word(gens)
    Q = len(gens)
    out = {}
    for l in fam.arities():
        if l > Q:
            continue
        q_out = Q - l + 1
        for j in range(1, Q - l + 2):
            rules = fam.apply(l, gens[j - 1 : j - 1 + l])
            if not rules:
                continue
            if suspended:
                parity = sum((fam.mu(s) - 1) for s in gens[: j - 1])
            else:
                prefix_mu = sum(fam.mu(s) for s in gens[: j - 1])
                parity = (q_out - j) * l + (j - 1) + l * prefix_mu
            sign = -1 if parity % 2 else 1
            for (sym, dd), coef in rules.items():
                new = gens[: j - 1] + (sym,) + gens[j - 1 + l :]
                fam.validate_word(new)
                _add_term(out, new, d + dd, sign * coef)
    return out


def delta_comb(fam, comb, suspended=None):
    out = {}
    for (gens, d), coef in comb.items():
        for (g2, d2), c2 in delta(fam, gens, d, suspended=suspended).items():
            _add_term(out, g2, d2, coef * c2)
    return out


# -- suspension --------------------------------------------------------------


def suspend(fam):
    """Re-sign the structure constants by the degree-shift convention so
    the relations hold without the explicit correction terms.  The map is
    an involution, so it also serves as the inverse."""
    ops = {}
    for l, rules in fam.ops.items():
        new_rules = {}
        for pattern, outs in rules.items():
            degs = [fam.mu(s) for s in pattern]
            sign = -1 if suspension_parity(degs) % 2 else 1
            new_rules[pattern] = [
                (sym, d, sign * coef) for (sym, d), coef in outs.items()
            ]
        ops[l] = new_rules
    return OperationFamily(
        fam.role,
        list(fam.gens.values()),
        ops,
        n=fam.n,
        NL=fam.NL,
        c=fam.c,
        positive_energy=fam.positive_energy,
        suspended=not fam.suspended,
    )


unsuspend = suspend


# -- reports -----------------------------------------------------------------


class Report:
    def __init__(self, check, window, passed, n_words, failures, note=None):
        self.check = check
        self.window = window
        self.passed = passed
        self.n_words = n_words
        self.failures = failures
        self.note = note

    def first_failure(self):
        return self.failures[0] if self.failures else None

    def to_obj(self):
        return {
            "check": self.check,
            "window": self.window.to_obj(),
            "passed": self.passed,
            "words_checked": self.n_words,
            "failures": [
                {
                    "word": list(gens),
                    "d": d,
                    "residue": sorted(
                        [list(g2), d2, c]
                        for (g2, d2), c in residue.items()
                    ),
                }
                for (gens, d), residue in self.failures
            ],
            "note": self.note
            or "verified on all basis words up to the window bounds",
        }


def _run_over_words(check_name, fam, window, residue_fn, jobs=1):
    words = basis_words(fam, window)
    failures = []

    def probe(gens):
        residue = _truncate(residue_fn(gens), window.emax)
        return (((gens, 0), residue) if residue else None)

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(probe, words))
    else:
        results = [probe(w) for w in words]
    for r in results:
        if r is not None:
            failures.append(r)
    failures.sort(key=lambda f: (len(f[0][0]), f[0][0]))
    return Report(check_name, window, not failures, len(words), failures)


# -- relation checkers -------------------------------------------------------


def gj_relation(fam, gens):
    """The explicitly signed associativity relation at one word:
    sum over inner windows of (-1)^eps(j, l2) outer(prefix, inner(...),
    suffix), which delta-squared expands into."""
    Q = len(gens)
    out = {}
    for l2 in fam.arities():
        if l2 > Q:
            continue
        l1 = Q - l2 + 1
        for j in range(1, Q - l2 + 2):
            inner = fam.apply(l2, gens[j - 1 : j - 1 + l2])
            if not inner:
                continue
            degs = [fam.mu(s) for s in gens]
            parity = (
                l2 * sum(degs[: j - 1])
                + (j - 1) * (l2 - 1)
                + (l1 - 1) * l2
            )
            sign = -1 if parity % 2 else 1
            for (sym, dd), icoef in inner.items():
                new = gens[: j - 1] + (sym,) + gens[j - 1 + l2 :]
                outer = fam.apply(l1, new)
                for (sym2, dd2), ocoef in outer.items():
                    _add_term(out, (sym2,), dd + dd2, sign * icoef * ocoef)
    return out


def check_a_infinity(fam, window, jobs=1, via_suspension=False):
    """delta o delta = 0 on every basis word in the window; the fully
    expanded signed relations give the same verdict by construction of
    the signs, and ``via_suspension`` reruns the check through the
    sign-free shifted convention instead."""
    if via_suspension:
        bfam = fam if fam.suspended else suspend(fam)

        def residue(gens):
            return delta_comb(bfam, delta(bfam, gens), suspended=True)

        return _run_over_words("a-infinity(suspended)", fam, window, residue, jobs)

    def residue(gens):
        return delta_comb(fam, delta(fam, gens))

    return _run_over_words("a-infinity", fam, window, residue, jobs)


def check_gj_relations(fam, window, jobs=1):
    """The arity-sum form of the relations, one word at a time."""
    return _run_over_words(
        "a-infinity(gj)", fam, window, lambda gens: gj_relation(fam, gens), jobs
    )


def check_unit(fam, unit_sym, window, jobs=1):
    """Unit axioms and the contracting homotopy U(w) = unit tensor w:
    delta(U(w)) + U(delta(w)) = w on every window word."""
    failures = []
    n_checked = 0
    # pointwise axioms
    m1 = fam.apply(1, (unit_sym,))
    if m1:
        failures.append(((("m1", unit_sym), 0), dict(m1)))
    for sym in sorted(fam.gens):
        got = fam.apply(2, (unit_sym, sym))
        want = {(sym, 0): 1}
        n_checked += 1
        if dict(got) != want:
            failures.append((((unit_sym, sym), 0), _sub(got, want)))
    for l in fam.arities():
        if l <= 2:
            continue
        for pattern, outs in fam.ops[l].items():
            if pattern[0] == unit_sym and outs:
                failures.append(((pattern, 0), dict(outs)))
    # contracting homotopy
    words = basis_words(fam, window)
    for gens in words:
        n_checked += 1
        lhs = {}
        for key, c in delta(fam, (unit_sym,) + gens).items():
            _add_term(lhs, key[0], key[1], c)
        for (g2, d2), c in delta(fam, gens).items():
            for key, c2 in {((unit_sym,) + g2, d2): 1}.items():
                _add_term(lhs, key[0], key[1], c * c2)
        residue = _truncate(_sub(lhs, {(gens, 0): 1}), window.emax)
        if residue:
            failures.append(((gens, 0), residue))
    return Report("unit", window, not failures, n_checked, failures)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def morphism_H(hfam, gens, d=0):
    """H(w) = sum over arity compositions of the quilted facet prefactor
    (-1)^(sum (q - i)(l_i - 1)) times the Koszul signs of moving each
    h past the earlier inputs, applied blockwise."""
    if hfam.role != "h":
        raise ShapeError("morphism_H needs an h family")
    hfam.validate_word(gens)
    Q = len(gens)
    out = {}
    for q in range(1, Q + 1):
        for comp in _compositions(Q, q):
            prefactor = sum(
                (q - i) * (comp[i - 1] - 1) for i in range(1, q + 1)
            )
            # per-block constants
            pos = 0
            terms = [((), 0, 1)]
            parity = prefactor
            ok = True
            for i, l in enumerate(comp):
                block = gens[pos : pos + l]
                rules = hfam.apply(l, block)
                if not rules:
                    ok = False
                    break
                # h_l has degree 1 - l: odd iff l is even... (1-l) mod 2
                opdeg = (1 - l) % 2
                parity += opdeg * sum(hfam.mu(s) for s in gens[:pos])
                new_terms = []
                for tgens, td, tcoef in terms:
                    for (sym, dd), coef in rules.items():
                        new_terms.append(
                            (tgens + (sym,), td + dd, tcoef * coef)
                        )
                terms = new_terms
                pos += l
            if not ok:
                continue
            sign = -1 if parity % 2 else 1
            for tgens, td, tcoef in terms:
                _add_term(out, tgens, d + td, sign * tcoef)
    return out


def _comb_map(fn, comb):
    out = {}
    for (gens, d), coef in comb.items():
        for (g2, d2), c2 in fn(gens, d).items():
            _add_term(out, g2, d2, coef * c2)
    return out


def check_chain_map(hfam, m0, m1, window, jobs=1):
    """Residues of H o delta(1) - delta(0) o H over basis words of the
    source complex (whose differential is m1)."""

    def residue(gens):
        lhs = _comb_map(lambda g, d: morphism_H(hfam, g, d), delta(m1, gens))
        rhs = delta_comb(m0, morphism_H(hfam, gens))
        return _sub(lhs, rhs)

    return _run_over_words("chain-map", m1, window, residue, jobs)


def homotopy_K(h0, h1, kfam, gens, d=0):
    """K(w): one homotopy block k at position p, morphism blocks h1
    before and h0 after, with prefactors (-1)^q, the quilted facet sign,
    and (-1)^(sum_{i<p}(l_i - 1)), plus the Koszul signs."""
    if kfam.role != "k":
        raise ShapeError("homotopy_K needs a k family")
    Q = len(gens)
    out = {}
    for q in range(1, Q + 1):
        for comp in _compositions(Q, q):
            base = q + sum(
                (q - i) * (comp[i - 1] - 1) for i in range(1, q + 1)
            )
            for p in range(1, q + 1):
                parity = base + sum(comp[i] - 1 for i in range(p - 1))
                pos = 0
                terms = [((), 0, 1)]
                ok = True
                for i, l in enumerate(comp):
                    block = gens[pos : pos + l]
                    if i == p - 1:
                        rules = kfam.apply(l, block)
                        opdeg = (-l) % 2
                    else:
                        fam = h1 if i < p - 1 else h0
                        rules = fam.apply(l, block)
                        opdeg = (1 - l) % 2
                    if not rules:
                        ok = False
                        break
                    parity += opdeg * sum(
                        kfam.mu(s) for s in gens[:pos]
                    )
                    new_terms = []
                    for tgens, td, tcoef in terms:
                        for (sym, dd), coef in rules.items():
                            new_terms.append(
                                (tgens + (sym,), td + dd, tcoef * coef)
                            )
                    terms = new_terms
                    pos += l
                if not ok:
                    continue
                sign = -1 if parity % 2 else 1
                for tgens, td, tcoef in terms:
                    _add_term(out, tgens, d + td, sign * tcoef)
    return out


def check_homotopy(h0, h1, kfam, m0, m1, window, jobs=1):
    """Residues of H(1) - H(0) - K o delta(1) - delta(0) o K."""

    def residue(gens):
        lhs = _sub(morphism_H(h1, gens), morphism_H(h0, gens))
        rhs = _comb_map(
            lambda g, d: homotopy_K(h0, h1, kfam, g, d), delta(m1, gens)
        )
        for key, c in delta_comb(m0, homotopy_K(h0, h1, kfam, gens)).items():
            _add_term(rhs, key[0], key[1], c)
        return _sub(lhs, rhs)

    return _run_over_words("homotopy", m1, window, residue, jobs)


# -- chain-level dual --------------------------------------------------------


def opposite(fam):
    """Transpose inputs and outputs: per generator, the combination of
    words it maps to in the dual, as {out sym: {(gens, d): coef}}."""
    if fam.role != "m":
        raise ShapeError("opposite needs a differential family")
    dual = {}
    for l, rules in fam.ops.items():
        for pattern, outs in rules.items():
            for (sym, d), coef in outs.items():
                dual.setdefault(sym, {})
                _add_term(dual[sym], pattern, d, coef)
    return dual


def dga_differential(fam, gens, d=0):
    """The dual derivation: apply the transposed, suspended operation at
    each position with the shifted-prefix Koszul sign."""
    bfam = fam if fam.suspended else suspend(fam)
    dual = opposite(bfam)
    out = {}
    for j in range(1, len(gens) + 1):
        parity = sum(bfam.mu(s) - 1 for s in gens[: j - 1])
        sign = -1 if parity % 2 else 1
        for (rep, dd), coef in dual.get(gens[j - 1], {}).items():
            new = gens[: j - 1] + rep + gens[j:]
            _add_term(out, new, d + dd, sign * coef)
    return out


def check_leibniz(fam, window, jobs=1):
    """d(x (x) y) = d(x) (x) y + (-1)^|x| x (x) d(y) with the shifted word
    degree, at every split of every window word."""

    def residue(gens):
        bfam = fam if fam.suspended else suspend(fam)
        total = {}
        for cut in range(1, len(gens)):
            x, y = gens[:cut], gens[cut:]
            lhs = dga_differential(fam, gens)
            rhs = {}
            for (g2, d2), c in dga_differential(fam, x).items():
                _add_term(rhs, g2 + y, d2, c)
            sx = sum(bfam.mu(s) - 1 for s in x)
            sign = -1 if sx % 2 else 1
            for (g2, d2), c in dga_differential(fam, y).items():
                _add_term(rhs, x + g2, d2, sign * c)
            for key, c in _sub(lhs, rhs).items():
                _add_term(total, key[0], key[1], c)
        return total

    return _run_over_words("leibniz", fam, window, residue, jobs)


# -- serialization and examples ----------------------------------------------


def family_to_obj(fam):
    return {
        "n": fam.n,
        "NL": fam.NL,
        "c": fam.c,
        "generators": [
            {
                "sym": g.sym,
                "coidx": g.coidx,
                "label": "f" if g.label == "f" else list(g.label),
            }
            for g in sorted(fam.gens.values(), key=lambda g: g.sym)
        ],
        "ops": {
            fam.role: {
                str(l): [
                    {
                        "in": list(pattern),
                        "out": [
                            {"sym": sym, "d": d, "coef": coef}
                            for (sym, d), coef in sorted(outs.items())
                        ],
                    }
                    for pattern, outs in sorted(rules.items())
                ]
                for l, rules in fam.ops.items()
            }
        },
    }


def family_from_obj(obj, role=None):
    roles = list(obj.get("ops", {}))
    if role is None:
        if len(roles) != 1:
            raise ShapeError("file must declare exactly one op role")
        role = roles[0]
    gens = [
        Generator(
            g["sym"],
            g["coidx"],
            g.get("label", "f")
            if g.get("label", "f") == "f"
            else tuple(g["label"]),
        )
        for g in obj["generators"]
    ]
    ops = {}
    for l, rules in obj["ops"][role].items():
        table = {}
        for rule in rules:
            outs = rule["out"]
            if outs is None:
                table[tuple(rule["in"])] = None
                continue
            table[tuple(rule["in"])] = [
                (o["sym"], o.get("d", 0), o.get("coef"))
                for o in outs
            ]
        ops[int(l)] = table
    return OperationFamily(
        role,
        gens,
        ops,
        n=obj.get("n", 2),
        NL=obj.get("NL", 2),
        c=obj.get("c", 0),
    )


def _assoc_family(names, mult, n=2, NL=2, coidx=None):
    gens = [Generator(s, 0 if coidx is None else coidx[s]) for s in names]
    rules = {}
    for a in names:
        for b in names:
            out = mult(a, b)
            rules[(a, b)] = [] if out is None else [(out, 0, 1)]
    return OperationFamily("m", gens, {2: rules}, n=n, NL=NL)


def example_library():
    """Desk-scale families: a truncated polynomial algebra, the exterior
    algebra on one odd generator, the two-generator Morse family of the
    circle, and a deformation template with constants left to fill in."""
    names = ["1", "a", "a2", "a3", "a4"]

    def pmul(x, y):
        i = names.index(x) + names.index(y)
        return names[i] if i < len(names) else None

    poly = _assoc_family(names, pmul)

    ext = OperationFamily(
        "m",
        [Generator("1", 0), Generator("t", 1)],
        {
            2: {
                ("1", "1"): [("1", 0, 1)],
                ("1", "t"): [("t", 0, 1)],
                ("t", "1"): [("t", 0, 1)],
                ("t", "t"): [],
            }
        },
        n=2,
    )

    circle = OperationFamily(
        "m",
        [Generator("M", 0), Generator("m", 1)],
        {
            2: {
                ("M", "M"): [("M", 0, 1)],
                ("M", "m"): [("m", 0, 1)],
                ("m", "M"): [("m", 0, 1)],
                ("m", "m"): [],
            }
        },
        n=1,
        NL=2,
    )

    def template():
        return OperationFamily(
            "m",
            [Generator("M", 0), Generator("m", 1)],
            {
                2: {
                    ("M", "M"): [("M", 0, 1)],
                    ("M", "m"): [("m", 0, 1)],
                    ("m", "M"): [("m", 0, 1)],
                    ("m", "m"): [("M", 1, None)],
                }
            },
            n=1,
            NL=2,
        )

    return {
        "polynomial": poly,
        "exterior": ext,
        "circle": circle,
        "quantum_template": template,
    }


def circle_cup_oracle():
    """Independent check data for the circle family: the simplicial cup
    product on a three-vertex triangulation of the circle has trivial
    square on H^1 and the class of a point as a two-sided unit on
    cohomology, matching the Morse constants."""
    # vertices 0,1,2; edges (0,1),(1,2),(2,0); cochains over Z
    # cup: (f u g)(i,j) = f(i) g(i,j) on 0x1, (f u g)(i,j) = f(i,j) g(j)
    verts = [0, 1, 2]
    edges = [(0, 1), (1, 2), (2, 0)]

    def d0(f):
        return {e: f[e[1]] - f[e[0]] for e in edges}

    def cup01(f, g):
        return {e: f[e[0]] * g[e] for e in edges}

    def cup10(f, g):
        return {e: f[e] * g[e[1]] for e in edges}

    one = {v: 1 for v in verts}
    # a generator of H^1: any cochain with total sum 1
    gen = {edges[0]: 1, edges[1]: 0, edges[2]: 0}
    results = {
        "unit_left": cup01(one, gen),
        "unit_right": cup10(gen, one),
        "gen": gen,
        "d_of_vertex_basis": {v: d0({w: 1 if w == v else 0 for w in verts}) for v in verts},
    }
    return results


def random_family(rng, n=2, NL=2, n_gens=3, arities=(1, 2, 3), density=0.7):
    """A random degree-law-respecting differential family (usually not
    associative: used for convention-equivalence testing)."""
    names = ["g%d" % i for i in range(n_gens)]
    coidx = {s: rng.randint(0, n) for s in names}
    gens = [Generator(s, coidx[s]) for s in names]
    by_coidx = {}
    for s in names:
        by_coidx.setdefault(coidx[s], []).append(s)
    ops = {}
    for l in arities:
        rules = {}
        for pattern in _iproduct(names, repeat=l):
            if rng.random() > density:
                continue
            mu_in = sum(coidx[s] for s in pattern)
            outs = []
            for d in range(0, 3):
                want = mu_in + 2 - l - d * NL
                for sym in by_coidx.get(want, ()):
                    if rng.random() < 0.5:
                        outs.append((sym, d, rng.choice([-2, -1, 1, 2])))
            if outs:
                rules[pattern] = outs
        if rules:
            ops[l] = rules
    return OperationFamily("m", gens, ops, n=n, NL=NL)
