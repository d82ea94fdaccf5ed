// @generated by gen_reference.py (mpmath, 40 digits). Do not edit by hand.

/// Gamma(0.3)
pub const GAMMA_0_3: f64 = 2.991568987687590628312517;
/// Gamma(0.5) = sqrt(pi)
pub const GAMMA_0_5: f64 = 1.772453850905516027298167;
/// Gamma(-2.5)
pub const GAMMA_M2_5: f64 = -0.9453087204829418812256893;
/// Gamma(170.5)
pub const GAMMA_170_5: f64 = 5.56209241455999961070581e+305;
/// Gamma(1e-7)
pub const GAMMA_1E_M7: f64 = 9.999999422784434004057597e+6;
/// 1/Gamma(-1.5)
pub const RGAMMA_M1_5: f64 = 0.4231421876608172152110596;
/// 1/Gamma(-7.25)
pub const RGAMMA_M7_25: f64 = 1885.377685506181807025252;
/// digamma(0.5)
pub const DIGAMMA_0_5: f64 = -1.963510026021423479440976;
/// digamma(0.01)
pub const DIGAMMA_0_01: f64 = -100.560885457868674497481;
/// digamma(7.3)
pub const DIGAMMA_7_3: f64 = 1.917820335637986098367634;
/// digamma(97.2)
pub const DIGAMMA_97_2: f64 = 4.571617858279702893070359;
/// digamma(-0.4)
pub const DIGAMMA_M0_4: f64 = 0.9593807861068095852393361;
/// Prabhakar M^2.0_{0.6,1.2}(0.7)
pub const ML_0_6_1_2_2_0_AT_0_7: f64 = 4.98147874724349166319919;

/// (Re s, Im s, Re Gamma(s), Im Gamma(s))
pub const COMPLEX_GAMMA: [(f64, f64, f64, f64); 6] = [
    (
        0.3,
        1.0,
        0.1453931234841979998381727,
        -0.5048942136641515994053683,
    ),
    (
        2.5,
        -3.0,
        -0.2181189710811228974767416,
        -0.07203476340717503356484924,
    ),
    (
        -1.7,
        0.4,
        1.135643882431639537407679,
        -0.2689079907291695756269456,
    ),
    (
        0.5,
        25.0,
        1.05114715175323461063554e-17,
        -1.943974681977683063270868e-17,
    ),
    (
        12.0,
        7.5,
        4.014444419101362221091836e+6,
        -2.226651629981712415443732e+5,
    ),
    (
        -4.2,
        -2.2,
        8.911808666546815250083294e-5,
        -0.0003026779608899015688484554,
    ),
];

/// (a, b, c, z, M^c_{a,b}(z)) at random points
pub const ML_RANDOM: [(f64, f64, f64, f64, f64); 20] = [
    (
        1.33332,
        2.358544,
        0.998892,
        0.749201,
        1.032384366061103678328718,
    ),
    (
        1.521014,
        2.622011,
        1.203573,
        1.158008,
        0.9097731112484641307730829,
    ),
    (
        1.452599,
        2.723582,
        0.635511,
        0.249686,
        0.6568666997286264031391027,
    ),
    (
        0.908815,
        1.038449,
        1.924678,
        0.908383,
        5.019376501233668689421688,
    ),
    (
        0.352731,
        1.114774,
        0.934265,
        1.505494,
        49.97755061299231950146051,
    ),
    (
        1.005624,
        0.788303,
        2.929152,
        3.109026,
        331.685176723439397211203,
    ),
    (
        1.541301,
        1.248329,
        2.825878,
        4.198826,
        28.45901011646655735825288,
    ),
    (
        0.719191,
        2.190384,
        2.851703,
        2.857111,
        315.0279465569602947395633,
    ),
    (
        0.929629,
        1.255814,
        2.551667,
        2.671087,
        101.6396224918426374072419,
    ),
    (
        1.889753,
        2.122214,
        2.509169,
        3.32905,
        2.877162839319543674757973,
    ),
    (
        0.939444,
        1.12117,
        2.88948,
        3.494204,
        587.1176389171189336010714,
    ),
    (
        0.990555,
        0.466922,
        1.420726,
        3.585118,
        163.5782748199975269246953,
    ),
    (
        0.862969,
        2.661068,
        0.614525,
        3.016517,
        2.482523428773394092230958,
    ),
    (
        1.462804,
        0.374383,
        2.083547,
        3.349949,
        36.23515480078033245740151,
    ),
    (
        1.51337,
        2.234032,
        2.196119,
        4.875649,
        7.361692548300959311987464,
    ),
    (
        1.850906,
        1.136416,
        1.763388,
        4.750492,
        9.160925695497549347710934,
    ),
    (
        0.722145,
        1.206285,
        2.384078,
        3.631154,
        6739.793406725253074078153,
    ),
    (
        1.024083,
        0.327622,
        2.370016,
        4.578924,
        2234.370965839623924183663,
    ),
    (
        1.814511,
        2.28056,
        2.651264,
        3.855212,
        3.243465297915612130880499,
    ),
    (
        0.746664,
        1.948185,
        1.525328,
        3.109688,
        82.15327094252182333492798,
    ),
];

/// density of D_0.7(1) at x = 2 (inverse Laplace of exp(-s^0.7))
pub const STABLE_0_7_T1_X2: f64 = 0.1076883448743371329903073;
/// density of E_0.8(2) at x = 1 (inverse Laplace in t of u^(a-1) exp(-x u^a))
pub const INV_STABLE_0_8_T2_X1: f64 = 0.2564546672792449701521647;
/// density of E_{0.6,1}(1) at x = 0.8 (inverse Laplace in t)
pub const INV_TEMPERED_0_6_L1_T1_X0_8: f64 = 0.2063789310916358207533864;
/// density of D_{0.6,0.5}(2) at x = 1.5 (inverse Laplace in x)
pub const TEMPERED_0_6_L0_5_T2_X1_5: f64 = 0.3972252755986877923977051;
