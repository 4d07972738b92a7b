//! Reference values from mpmath at 40 digits, produced by `data/gen_common.py`.
#![allow(dead_code)]

use zplab_core::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub const ZETA_ZERO_ORDINATES: [f64; 10] = [
    14.13472514173469379,
    21.022039638771554993,
    25.010857580145688763,
    30.42487612585951321,
    32.935061587739189691,
    37.586178158825671257,
    40.918719012147495187,
    43.327073280914999519,
    48.005150881167159728,
    49.773832477672302182,
];

/// `N(T)` for T = 50, 100, 200, 300, 400, 500.
pub const ZERO_COUNTS: [(f64, i64); 6] = [(50.0, 10), (100.0, 29), (200.0, 79), (300.0, 138), (400.0, 202), (500.0, 269)];

/// `(σ, t, [ζ^(k)(s) for k = 0..=5])`
pub const ZETA_TABLE: [(f64, f64, [(f64, f64); 6]); 8] = [
    (0.5, 14.0, [(0.022241142609993589246, -0.1032581232664500579), (0.74823369612008626253, 0.20443653378499741947), (-0.56836736669755830341, -0.28948411433979624947), (0.41525999986497449703, 0.36147801482917534319), (-0.27208929453302697529, -0.42012612292541386809), (0.12677386113700496269, 0.46177951127805205224)]),
    (2.0, 10.0, [(1.1979825006741846076, -0.079170491720525747273), (-0.13543269333308647329, 0.033197442316129977893), (0.090985075841255721547, -0.0029012256715271468632), (-0.058770363417158119568, -0.015902774753934730109), (0.034764524704916456878, 0.026134928296860473767), (-0.016308691630516411314, -0.029881719028264226721)]),
    (-3.0, 5.0, [(-0.09939511318285369604, 0.53882004898548708191), (0.34043685446929624245, 0.062188017853064129888), (-0.032988409476369145214, -0.18528776618134791367), (-0.085322146958247033511, 0.10140719856053193093), (0.10657928869575166784, 0.0059093857895469962531), (-0.060466178671185183599, -0.06979169958052445614)]),
    (-8.0, 2.0, [(0.028162226193006567063, 0.039309537739076150296), (0.043572821095656362258, -0.050811545183188229789), (-0.080071575227484385578, -0.035969214937903615376), (-0.010113524809057885988, 0.11094179075683854566), (0.13037996337902155123, -0.043911205014318444815), (-0.1191210342625837278, -0.11697353329911350876)]),
    (-20.5, 1.0, [(132.9603658750703998, 334.31373241671467753), (328.6602028914160678, -650.85960667368111949), (-1286.6406089558438456, 323.16566836226848182), (1929.0036930328666376, 1637.5166238362590519), (-32.773009398911516898, -5280.3080003188937949), (-7030.9196004013938239, 7232.9331009782297212)]),
    (0.2999999999999999889, 300.0, [(-0.30455642975894052994, 1.8392491144297059377), (5.4591303271945561184, -8.9340745662964247038), (-19.257924660303385808, 35.30102439385763785), (66.634146505435016347, -135.24030901833000103), (-231.5169872064842402, 516.39882327629274883), (812.04886518827532067, -1973.6301380770138893)]),
    (3.0, -7.0, [(1.0142003689711159321, -0.096125395858022432498), (-0.0073408124243915291628, 0.058136907430830689625), (0.002107909485660597736, -0.032634202998819406011), (0.0017525023618308098688, 0.0161849856524004258), (-0.0042503289924956169473, -0.0063304838055870859599), (0.0052633400523568627027, 0.0011571359805518477537)]),
    (-6.2000000000000001776, 40.0, [(72075.412267707461309, -238856.08450303761938), (-173728.97632819443105, 434496.29634296424367), (401989.39932929226259, -781953.91326422736931), (-901979.45198754201937, 1388338.2324739248934), (1974811.1874030921804, -2422304.2367995244634), (-4235721.6942001671146, 4129676.6341655768386)]),
];

/// Zeros of ζ' with 1 < γ < 50.
pub const ZETA_PRIME_ZEROS: [(f64, f64); 5] = [
    (2.4631618694543212859, 23.298320492762857902),
    (1.286496822269047697, 31.708250083115908605),
    (2.3075700637226316416, 38.489983173078935851),
    (1.3827636057116745758, 42.290964554596729819),
    (0.96468562270568565053, 48.847159905068479085),
];

/// `ζ'(2)² + ζ(2)³`
pub const Z1SQ_PLUS_Z0CUBE_AT_2: f64 = 5.329872625352651022;
/// `2 ζ'(3) ζ''(3)`
pub const TWO_Z1_Z2_AT_3: f64 = -0.095000311938259669215;
/// `ζ'(0)`
pub const ZETA_PRIME_0: f64 = -0.91893853320467274178;
/// `F'/F(30)`
pub const LOGDERIV_30_Z0: f64 = -6.4554895327878557834e-10;
/// `F'/F(30)`
pub const LOGDERIV_30_Z1: f64 = -0.69315053329092626311;
/// `F'/F(30)`
pub const LOGDERIV_30_Z1SQ_PLUS_Z0CUBE: f64 = -1.9366468604140747614e-9;
/// `(σ, t, F(s), F'(s))` for `z1^2 + z0^3`.
pub const F_TABLE: [(f64, f64, (f64, f64), (f64, f64)); 4] = [
    (0.5, 14.0, (0.51735894845196295613, 0.30688033388669974639), (-0.75218710479398878115, -0.68213978086039132716)),
    (2.0, 10.0, (1.7140122485632325132, -0.34936326083690556641), (-0.58611737131433934978, 0.22620424612136617125)),
    (-3.0, 5.0, (0.19761920792560226956, -0.098122208516877007551), (-0.26585645846037490713, -0.29197676778935373739)),
    (0.2999999999999999889, 300.0, (-46.953038886292501225, -103.25463878587112165), (336.59114985166646074, 799.36302805389650827)),
];
/// `α(3/2)` for `z1`, the closed form `−log 3 · log(3/2) / log 2`.
pub const ALPHA_3_2_Z1: f64 = -0.64264699170229015835;
