"""Static element-symbol table used to validate site species."""

from __future__ import annotations

ELEMENT_SYMBOLS = frozenset(
    """
    H He
    Li Be B C N O F Ne
    Na Mg Al Si P S Cl Ar
    K Ca Sc Ti V Cr Mn Fe Co Ni Cu Zn Ga Ge As Se Br Kr
    Rb Sr Y Zr Nb Mo Tc Ru Rh Pd Ag Cd In Sn Sb Te I Xe
    Cs Ba La Ce Pr Nd Pm Sm Eu Gd Tb Dy Ho Er Tm Yb Lu
    Hf Ta W Re Os Ir Pt Au Hg Tl Pb Bi Po At Rn
    Fr Ra Ac Th Pa U Np Pu Am Cm Bk Cf Es Fm Md No Lr
    Rf Db Sg Bh Hs Mt Ds Rg Cn Nh Fl Mc Lv Ts Og
    """.split()
)


def split_species(species: str) -> tuple[str, str]:
    """Split a species label into (element symbol, oxidation tag).

    Accepts plain symbols ("Si") and symbol+oxidation tags ("Li+", "O2-",
    "Fe3+"). Raises ValueError when no known element symbol prefixes the
    label.
    """
    for n in (2, 1):
        head = species[:n]
        if head in ELEMENT_SYMBOLS:
            return head, species[n:]
    raise ValueError(f"unrecognized element symbol in species {species!r}")


def is_valid_species(species: str) -> bool:
    try:
        element, tag = split_species(species)
    except ValueError:
        return False
    return tag == "" or all(c.isdigit() or c in "+-" for c in tag)
