from algebra.subspace import span
from building.flags import Flag
from utils.errors import InvalidFlagError

def format_vector(vector):
    """(0, 1, 1) -> 'e2+e3'; coefficients other than 1 are written as element codes."""
    terms = []
    for i, v in enumerate(vector):
        if not v:
            continue
        terms.append("e{}".format(i + 1) if v == 1 else "{}e{}".format(v, i + 1))
    return "+".join(terms) or "0"

def format_subspace(w):
    if w.is_zero:
        return "0"
    if w.is_full:
        return "V"
    return "⟨{}⟩".format(", ".join(format_vector(row) for row in w.basis))

def format_flag(flag):
    if flag is None:
        return "-"
    return "({})".format(" ⊂ ".join(format_subspace(w) for w in flag.members))

def format_rows(rows):
    return ";".join(",".join(str(v) for v in row) for row in rows)

def parse_matrix(text):
    """'1,1;0,1' -> [[1, 1], [0, 1]]."""
    rows = [row for row in text.replace(" ", "").split(";") if row]
    return [[int(v) for v in row.split(",")] for row in rows]

def subspace_to_json(w):
    return [list(row) for row in w.basis]

def flag_to_json(flag):
    if flag is None:
        return None
    return [subspace_to_json(w) for w in flag.members]

def complex_summary(complex_):
    return {
        "simplices": len(complex_),
        "by_length": complex_.counts_by_length(),
        "by_type": {"-".join(str(d) for d in t): c for t, c in complex_.counts_by_type().items()},
    }

def homology_to_json(report):
    if report is None:
        return None
    return {
        "reduced_betti": list(report.reduced_betti),
        "torsion": [list(t) for t in report.torsion],
        "euler_characteristic": report.euler_characteristic,
    }

def centre_to_json(report):
    return {
        "group": report.H.name,
        "y_simplices": len(report.Y),
        "m_order": report.M.order,
        "k_order": report.K.order,
        "x_k_simplices": len(report.XK),
        "centre": flag_to_json(report.centre),
        "checks": dict(sorted(report.checks.items())),
    }

def loewy_to_json(report):
    return {
        "socle_flag": flag_to_json(report.socle_flag),
        "radical_flag": flag_to_json(report.radical_flag),
        "k_stable": report.k_stable,
    }

def _check_codes(field, n, basis, index):
    if not isinstance(basis, list):
        raise InvalidFlagError("flag {}: a member basis must be a list of vectors".format(index))
    for vector in basis:
        if not isinstance(vector, list) or len(vector) != n:
            raise InvalidFlagError(
                "flag {}: {!r} is not a vector of length {}".format(index, vector, n)
            )
        for v in vector:
            # bool is an int subclass
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < field.q:
                raise InvalidFlagError(
                    "flag {}: element code {!r} out of range for F_{}".format(index, v, field.q)
                )


def flags_from_json(field, n, raw_flags):
    """Flags given as lists of member bases; every member is re-reduced to canonical form."""
    if not isinstance(raw_flags, list):
        raise InvalidFlagError("flags must be a list")
    flags = []
    for index, raw in enumerate(raw_flags):
        if not isinstance(raw, list) or not raw:
            raise InvalidFlagError("flag {} must be a nonempty list of member bases".format(index))
        for basis in raw:
            _check_codes(field, n, basis, index)
        try:
            members = [span(field, n, [tuple(v) for v in basis]) for basis in raw]
        except (TypeError, ValueError, IndexError) as e:
            raise InvalidFlagError("flag {} is malformed: {}".format(index, e))
        flags.append(Flag(members))
    return flags
