"""Named algebraic constants from the result tables and the appendix, each
stored as (defining coefficients highest-degree-first, root index, printed
decimal approximation).  Validation recomputes the root object and checks
every printed digit against a refined enclosure (truncation semantics: all
shown digits correct).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from ..kernel import AlgebraicNumber, Polynomial, Q, root_object

A47_STAR_POLY = [
    3690134492416632557532940385381064525,
    61029736485482612404619408048530290750,
    486403976093629932677089384897095046935,
    2487196669730164018264503869937911017740,
    9165142322735094610456262590295894934837,
    25915196147894075773838728122892827040386,
    58458916104726476816514027882738196455735,
    107979092136285121513038059062379021459880,
    166321122780685405075074427832862986958975,
    216449429305753337078085597912060934057890,
    240240731812681651181007922270907964916605,
    228911785323865533798715657213902093130380,
    188040840503767270695413477386184055716415,
    133446371333215106255009916213506161760670,
    81810565480540039001637010346621868861045,
    43219005242542299485983226045186624870400,
    19562352897200734179995371112351361862080,
    7506336744004524872039975974458313909440,
    2394351571156175328455192580869480281280,
    610166214096532168321831058806216604160,
    112156289536490108521784144024335180800,
    8974819895289125868510161871145369600,
    -2895655868721204798705192374322355200,
    -1556648822533171464739057080454594560,
    -420567479322606922282373395209093120,
    -79380339166868822139598939104215040,
    -11057440115321274264887170064056320,
    -1128821021046790224548013859143680,
    -80578528495036917551879568752640,
    -3612945212567877804734004854784,
    -76850622516036469593789693952,
]

B47_STAR_POLY = [
    4191472,
    370695456,
    15701398968,
    423572490288,
    8166117227943,
    119697694352106,
    1385540391042992,
    12982888147808790,
    100093600309232610,
    641253042735937920,
    3429070908298155495,
    15292307228951973150,
    56488604555080263600,
    170258230386661619700,
    405691319555093173950,
    698620766882164002000,
    475967180133964116000,
    -2768737485607368840000,
    -19171364099094461844000,
    -83177899383693915360000,
    -273285810570616506720000,
    -658873655023431060000000,
    -1076077292526138186000000,
    -1039429806316804224000000,
    -402385174364630880000000,
    1632495959008528320000000,
    15171036284831515200000000,
    63475278812225280000000000,
    141035850392839718400000000,
    165407760061818624000000000,
    81912466393111872000000000,
]

# degree-10 polynomial governing the ninth-derivative sign argument on the
# left unbounded parameter component of the 4/4 order-7 family
P471_POLY = [
    4593387934777490821322994,
    -23474176816503998442760098,
    54351276637181597088697031,
    -75708182541462463946985360,
    71791544313152743211806464,
    -51339236908163135191695540,
    32383499796235996766706978,
    -22447171953065668650772896,
    -31555722050640962925153690,
    -13278623731050880370830074,
    -1667865061502294482628289,
]


@dataclass
class NamedConstant:
    name: str
    coeffs_high_first: list
    index: int
    printed: Optional[str]
    source: str
    _value: Optional[AlgebraicNumber] = None

    @property
    def value(self) -> AlgebraicNumber:
        if self._value is None:
            self._value = root_object(list(reversed([Q(c) for c in self.coeffs_high_first])), self.index)
        return self._value

    def validate(self) -> bool:
        v = self.value  # construction itself certifies the isolation
        if self.printed is None:
            return True
        return v.matches_decimal(self.printed)

    def serialize(self) -> str:
        cs = ",".join(str(c) for c in self.coeffs_high_first)
        printed = self.printed or ""
        return f"{self.name}\troot({self.index}; {cs})\t{printed}\t{self.source}"


_TABLE = [
    # --- 3/3 order 6 and 2/2 order 3 results
    ("R_223", [1, -2, -2], 2, "2.732050", "two-two-three optimum"),
    ("R_336", [1, 6, 0, -40], 1, "2.207606", "three-three-six optimum (magnitude)"),
    ("alpha0_336", [1, -12, 60, -120], 1, "4.64437", "diagonal-3 denominator real pole"),
    ("c0_336", [1, -24, -1200, -40000], 1, "57.2025", "diagonal-3 dominant residue"),
    # --- 3/3 order 5
    ("rho_352", [864000, 43200, 360, 1], 1, "-0.0403944", "3/3,5 equal-real-part parameter"),
    ("rho_354", [13824000, 345600, 2880, -152, -1], 1, "-0.00625485", "3/3,5 zero-crossing of the equidistant point"),
    (
        "a_35_star",
        [13436928000000, 1492992000000, 68428800000, 1427328000, 13867200, 61200, 101],
        2,
        "-0.009257142292762484937472363",
        "3/3,5 maximizer",
    ),
    ("B_35_star", [1, 12, 36, -76, -360, 0, 900], 2, "2.301322934003485801187482", "3/3,5 optimal radius"),
    # --- counterexample
    (
        "R_psi32",
        [43572620, -880461561, 5950520030, -13451175530],
        1,
        "6.778307398562974637718719",
        "order-2 counterexample radius",
    ),
    # --- 4/4 order 7 (appendix 9.1)
    ("rho_471", [252105, 936390, 1441629, 1175608, 534576, 128352, 12704], 1, "-0.843194", "appendix 9.1"),
    ("rho_472", [252105, 936390, 1441629, 1175608, 534576, 128352, 12704], 2, "-0.471357", "appendix 9.1"),
    ("rho_473", [1, -30, 390, -2760, 11160, -25200, 25200], 2, "7.64527", "appendix 9.1"),
    ("rho_474", [1, -15, 90, -210], 1, "5.64849", "appendix 9.1"),
    (
        "rho_475",
        [
            2914539265575,
            14876524399779,
            33497711997246,
            43683499824678,
            36368607954483,
            20052618149655,
            7324770907832,
            1709817444048,
            231520801344,
            13859993824,
        ],
        1,
        "-0.850052",
        "appendix 9.1",
    ),
    ("rho_476", [2, 0, -570, -6360, -28755, -58950, -44775], 2, "21.5907", "appendix 9.1"),
    (
        "rho_478",
        [
            1525366344600,
            8651006268660,
            22401405617094,
            35008454688795,
            36765395913141,
            27330042736584,
            14744440158000,
            5816571277965,
            1665232178673,
            337417309264,
            45932541984,
            3771903744,
            141310592,
        ],
        1,
        "-0.469514",
        "appendix 9.1",
    ),
    ("rho_479", [1715, 2793, 1428, 232], 3, "-0.358565", "appendix 9.1"),
    ("rho_4710", [3675, 3507, 1152, 128], 1, "-0.274796", "appendix 9.1"),
    ("a_47_star", A47_STAR_POLY, 1, "-0.4398493860002001824004494", "4/4,7 maximizer (degree 30)"),
    ("B_47_star", B47_STAR_POLY, 2, "2.743911895676330804848228", "4/4,7 optimal radius (degree 30)"),
    ("equidist4_47", [1, -21, 165, -520, 0, 3600, -6000], 1, "-2.40614", "4/4,7 four-pole equidistant point"),
    # --- single-pole classes
    ("R_hat_33", [1, -4, -4], 2, "4.828427", "3/3,3 optimum 2+sqrt8"),
    ("R_hat_43", [1, -6, -6], 2, "6.872983", "4/4,3 optimum 3+sqrt15"),
    (
        "x_334_star",
        [1, 12, 60, 120, -144, -1152, -1536, 1152, 2304, -1536],
        1,
        "-3.287278451851993925371346",
        "3/3,4 optimal witness point",
    ),
    ("alpha0_334", [1, -12, 36, -24], 3, "7.75877", "3/3,4 member-1 pole"),
    ("c_334", [1, 9, -9, -9], 1, "-9.82294", "3/3,4 member-1 constant term"),
    ("c1_334", [1, -288, -5184, 13824], 3, "304.856", "3/3,4 member-1 order-1 residue"),
    ("c2_334", [1, 3168, -243648, -235008], 1, "-3243.10", "3/3,4 member-1 order-2 residue"),
    ("c3_334", [1, -11808, -684288, 110592], 3, "11865.6", "3/3,4 member-1 order-3 residue"),
    ("psi343_ell5_root", [1, 66, 1242, 7008, 1872, -648, -72], 5, "-0.0943315", "3/3,4 member-3 witness root"),
    ("psi342_d6_at0", [8, -3540, 600, 4625], 1, None, "3/3,4 member-2 sixth derivative at 0"),
    (
        "x_445_star",
        [1, 12, 48, -32, -864, -2016, 2784, 13248, -9072, -35136, 44928, -20736, 3456],
        1,
        "-3.743299247417768882803493",
        "4/4,5 optimal witness point",
    ),
    (
        "R_hat_44",
        [1, -24, 240, -1168, 1848, 7008, -30528, 7488, 71568, 36864],
        3,
        "5.167265421277419938673374",
        "4/4,4 optimum",
    ),
    (
        "a_44_star",
        [147456, -546624, 799488, -601344, 258432, -66576, 10400, -960, 48, -1],
        1,
        "0.09713312764144710280835106",
        "4/4,4 maximizer (degree 9)",
    ),
    # --- appendix 9.2
    ("rho_421", [512, -7296, 22800, -17575], 1, "1.17854", "appendix 9.2"),
    ("rho_422", [1024, -10176, 22048, -11713], 1, "0.808208", "appendix 9.2"),
    ("rho_423", [1024, -10176, 22048, -11713], 2, "1.97947", "appendix 9.2"),
    ("rho_424", [256, -5088, 16536, -11713], 1, "1.00126", "appendix 9.2"),
]


@lru_cache(maxsize=1)
def named_constants() -> dict[str, NamedConstant]:
    return {name: NamedConstant(name, cs, idx, printed, src) for name, cs, idx, printed, src in _TABLE}


def validate_all() -> list[str]:
    """Names of constants whose printed digits FAIL to validate (empty list =
    the anti-typo invariant holds)."""
    bad = []
    for name, c in named_constants().items():
        if not c.validate():
            bad.append(name)
    return bad


def export_table() -> str:
    lines = ["# name\tdefining\tprinted\tsource\tv1"]
    for c in named_constants().values():
        lines.append(c.serialize())
    return "\n".join(lines) + "\n"


# -- parametrized pole-location root objects ---------------------------------


def rho_351(a: Fraction) -> AlgebraicNumber:
    return root_object([Q(20), 240 * a - 8, 1 - 120 * a, 20 * a], 1)


def rho_353(a: Fraction) -> AlgebraicNumber:
    return root_object(
        [
            -14400 * a * a + 400 * a - 4,
            19200 * a * a - 400 * a + 1,
            -9600 * a * a + 80 * a,
            1600 * a * a,
        ],
        1,
    )


def rho_4711(a: Fraction) -> AlgebraicNumber:
    return root_object([Q(-840), -840 * a, 420 * a + 120, -84 * a - 32, 7 * a + 3], 1)


def rho_4712(a: Fraction) -> AlgebraicNumber:
    return root_object([Q(-840), -840 * a, 420 * a + 120, -84 * a - 32, 7 * a + 3], 2)


def p471_polynomial() -> Polynomial:
    return Polynomial.from_int_list(list(reversed(P471_POLY)))
