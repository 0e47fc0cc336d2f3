//! Published measurement sets and their LHS bounds, embedded verbatim.
//!
//! Closed-form entries are evaluated at full precision; decimal entries
//! keep the printed digits and are renormalized to unit length when a
//! [`MeasurementSet`] is built from them.

use crate::error::Result;
use crate::lhsbound::MeasurementSet;

/// Tolerance for bounds quoted as exact expressions.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-9;
/// Tolerance for bounds quoted with four decimals.
pub const DECIMAL_TOLERANCE: f64 = 5e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Table {
    /// The SJWP Platonic-solid sets, N = 2, 3, 4, 6, 10.
    Sjwp,
    /// Optimal sets N = 2..10 in northern-hemisphere form.
    Optimal,
    /// Optimal sets N = 12..20, four decimals.
    OptimalLarge,
    /// Six-decimal northern-hemisphere versions of the N = 7..10 optima.
    OptimalPrecise,
    /// Exact, non-hemisphere form of the N = 5 optimum.
    OptimalExactN5,
}

impl Table {
    pub fn prefix(self) -> &'static str {
        match self {
            Table::Sjwp => "table1",
            Table::Optimal => "table2",
            Table::OptimalLarge => "sm",
            Table::OptimalPrecise => "sm6",
            Table::OptimalExactN5 => "sm-exact",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenSet {
    pub table: Table,
    pub n: usize,
    pub rows: Vec<[f64; 3]>,
    /// The bound value the row is checked against.
    pub expected: f64,
    pub tolerance: f64,
    /// How the expected value is quoted (closed form or decimals).
    pub quoted: &'static str,
    /// Alternative published values that disagree with `expected`.
    pub annotations: Vec<(&'static str, f64)>,
}

impl GoldenSet {
    /// Identifier such as `table2-n6`.
    pub fn key(&self) -> String {
        format!("{}-n{}", self.table.prefix(), self.n)
    }

    pub fn is_closed_form(&self) -> bool {
        self.tolerance <= CLOSED_FORM_TOLERANCE
    }

    /// Unit-normalized set and the largest normalization correction applied.
    pub fn measurement_set(&self) -> Result<(MeasurementSet, f64)> {
        MeasurementSet::from_rows_normalized(self.key(), &self.rows)
    }
}

fn s(x: f64) -> f64 {
    x.sqrt()
}

fn closed(table: Table, rows: Vec<[f64; 3]>, expected: f64, quoted: &'static str) -> GoldenSet {
    GoldenSet {
        table,
        n: rows.len(),
        rows,
        expected,
        tolerance: CLOSED_FORM_TOLERANCE,
        quoted,
        annotations: Vec::new(),
    }
}

fn decimal(table: Table, rows: &[[f64; 3]], expected: f64, quoted: &'static str) -> GoldenSet {
    GoldenSet {
        table,
        n: rows.len(),
        rows: rows.to_vec(),
        expected,
        tolerance: DECIMAL_TOLERANCE,
        quoted,
        annotations: Vec::new(),
    }
}

/// The five SJWP sets.
pub fn sjwp_sets() -> Vec<GoldenSet> {
    let t = Table::Sjwp;
    let r5 = s(5.0);
    let n6_a = (5.0 - r5) / 10.0;
    let n6_b = (5.0 + r5) / 10.0;
    let n6_c = s((5.0 + r5) / 10.0);
    let n6_d = s((5.0 - r5) / 10.0);
    let n10_a = (3.0 - r5) / 6.0;
    let n10_b = (3.0 + r5) / 6.0;
    let n10_c = s((3.0 + r5) / 6.0);
    let n10_d = s((3.0 - r5) / 6.0);
    vec![
        closed(t, vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], s(2.0) / 2.0, "sqrt(2)/2"),
        closed(
            t,
            vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            s(3.0) / 3.0,
            "sqrt(3)/3",
        ),
        closed(
            t,
            vec![
                [s(6.0) / 3.0, 0.0, s(3.0) / 3.0],
                [-s(6.0) / 3.0, 0.0, s(3.0) / 3.0],
                [0.0, s(6.0) / 3.0, s(3.0) / 3.0],
                [0.0, -s(6.0) / 3.0, s(3.0) / 3.0],
            ],
            s(3.0) / 3.0,
            "sqrt(3)/3",
        ),
        closed(
            t,
            vec![
                [0.0, 0.0, 1.0],
                [2.0 / r5, 0.0, 1.0 / r5],
                [n6_a, n6_c, 1.0 / r5],
                [-n6_b, n6_d, 1.0 / r5],
                [-n6_b, -n6_d, 1.0 / r5],
                [n6_a, -n6_c, 1.0 / r5],
            ],
            (1.0 + r5) / 6.0,
            "(1+sqrt(5))/6",
        ),
        closed(
            t,
            vec![
                [0.0, 0.0, 1.0],
                [2.0 / 3.0, 0.0, r5 / 3.0],
                [r5 / 3.0, 1.0 / s(3.0), 1.0 / 3.0],
                [n10_a, n10_c, 1.0 / 3.0],
                [-1.0 / 3.0, 1.0 / s(3.0), r5 / 3.0],
                [-n10_b, n10_d, 1.0 / 3.0],
                [-n10_b, -n10_d, 1.0 / 3.0],
                [-1.0 / 3.0, -1.0 / s(3.0), r5 / 3.0],
                [n10_a, -n10_c, 1.0 / 3.0],
                [r5 / 3.0, -1.0 / s(3.0), 1.0 / 3.0],
            ],
            (3.0 + r5) / 10.0,
            "(3+sqrt(5))/10",
        ),
    ]
}

/// Closed form of C_5 as printed alongside the N = 5 row of the optimal table.
pub fn c5_main_text_form() -> f64 {
    s(2.0 * (9.0 + s(33.0))) / 20.0
}

/// Closed form of C_5 from the detailed N = 5 derivation.
pub fn c5_derivation_form() -> f64 {
    s((9.0 + s(33.0)) / 50.0)
}

/// The nine optimal sets N = 2..10.
pub fn optimal_sets() -> Vec<GoldenSet> {
    let t = Table::Optimal;
    let r2 = s(2.0);
    let r3 = s(3.0);
    let r5 = s(5.0);
    let r6 = s(6.0);
    let r10 = s(10.0);
    let mut n5 = decimal(
        t,
        &[
            [-0.9297, 0.0, 0.3683],
            [0.1459, -0.9182, 0.3683],
            [0.6837, 0.6300, 0.3683],
            [-0.2460, 0.6300, 0.7366],
            [0.3461, -0.3418, 0.8737],
        ],
        0.5430,
        "0.5430",
    );
    n5.annotations = vec![
        ("(1/20)sqrt(2(9+sqrt(33)))", c5_main_text_form()),
        ("sqrt((9+sqrt(33))/50)", c5_derivation_form()),
    ];
    let mut n7 = decimal(
        t,
        &[
            [0.8110, 0.5183, 0.2712],
            [-0.9625, 0.0, 0.2712],
            [-0.0256, -0.9423, 0.3337],
            [0.6536, -0.5082, 0.5609],
            [-0.5502, 0.5183, 0.6547],
            [0.1845, 0.7330, 0.6547],
            [-0.1108, -0.3192, 0.94126],
        ],
        0.5268,
        "0.5268",
    );
    n7.annotations = vec![("0.5268 (table)", 0.5268), ("0.562784 (detailed N=7 text)", 0.562784)];

    let closed_tol = |g: GoldenSet| GoldenSet { tolerance: 1e-6, ..g };
    vec![
        closed_tol(closed(
            t,
            vec![[0.0, -1.0 / r2, 1.0 / r2], [0.0, 1.0 / r2, 1.0 / r2]],
            r2 / 2.0,
            "sqrt(2)/2",
        )),
        closed_tol(closed(
            t,
            vec![
                [r6 / 3.0, 0.0, r3 / 3.0],
                [-r6 / 6.0, r2 / 2.0, r3 / 3.0],
                [-r6 / 6.0, -r2 / 2.0, r3 / 3.0],
            ],
            r3 / 3.0,
            "sqrt(3)/3",
        )),
        closed_tol(closed(
            t,
            vec![
                [2.0 / r5, 0.0, 1.0 / r5],
                [-1.0 / (2.0 * r5), r3 / 2.0, 1.0 / r5],
                [-7.0 / (4.0 * r5), -r3 / 4.0, 1.0 / r5],
                [1.0 / (4.0 * r5), -r3 / 4.0, 2.0 / r5],
            ],
            r5 / 4.0,
            "sqrt(5)/4",
        )),
        n5,
        closed_tol(closed(
            t,
            vec![
                [3.0 / r10, 0.0, 1.0 / r10],
                [-1.0 / (3.0 * r10), 2.0 * r2 / 3.0, 1.0 / r10],
                [-s(2.0 / 5.0), -1.0 / r2, 1.0 / r10],
                [-7.0 / (3.0 * r10), 1.0 / (3.0 * r2), 2.0 / r10],
                [1.0 / r10, -1.0 / r2, 2.0 / r10],
                [s(2.0 / 5.0) / 3.0, 1.0 / (3.0 * r2), 3.0 / r10],
            ],
            r10 / 6.0,
            "sqrt(10)/6",
        )),
        n7,
        decimal(
            t,
            &[
                [0.9687, 0.0657, 0.2395],
                [-0.7471, -0.6200, 0.2395],
                [-0.2099, 0.9422, 0.2611],
                [-0.6502, 0.4930, 0.5782],
                [0.6228, -0.5271, 0.5782],
                [-0.0879, -0.8111, 0.5782],
                [0.4317, 0.4921, 0.7560],
                [-0.3280, -0.0348, 0.9446],
            ],
            0.5219,
            "0.5219",
        ),
        decimal(
            t,
            &[
                [-0.9470, -0.2399, 0.2138],
                [0.9753, 0.0559, 0.2138],
                [0.2236, 0.9006, 0.3727],
                [-0.4840, 0.7917, 0.3727],
                [0.4918, -0.7506, 0.4412],
                [-0.2434, -0.8638, 0.4412],
                [0.5709, 0.1215, 0.8120],
                [-0.5810, -0.0558, 0.8120],
                [-0.0062, 0.0404, 0.9992],
            ],
            0.5198,
            "0.5198",
        ),
        decimal(
            t,
            &[
                [0.9160, 0.3469, 0.2016],
                [-0.9680, 0.1498, 0.2016],
                [-0.3817, -0.8738, 0.3013],
                [0.5544, -0.7758, 0.30130],
                [0.5288, 0.6830, 0.5039],
                [-0.6588, 0.5587, 0.5039],
                [-0.0810, 0.7739, 0.6281],
                [0.0654, -0.6247, 0.7781],
                [-0.4556, -0.1679, 0.8742],
                [0.4805, -0.0700, 0.8742],
            ],
            0.5168,
            "0.5168",
        ),
    ]
}

/// Optimal sets for N = 12, 14, 16, 18, 20.
pub fn optimal_large_sets() -> Vec<GoldenSet> {
    let t = Table::OptimalLarge;
    vec![
        decimal(
            t,
            &[
                [-0.8002, -0.5577, 0.22050],
                [-0.859, 0.4357, 0.2686],
                [-0.2008, 0.9394, 0.2779],
                [0.9529, 0.1212, 0.2779],
                [0.7407, -0.6117, 0.2779],
                [-0.1576, -0.9277, 0.3383],
                [0.5093, 0.7663, 0.3917],
                [0.2982, -0.5917, 0.7490],
                [-0.6580, 0.0164, 0.7529],
                [-0.1256, 0.5548, 0.8225],
                [0.5214, 0.1453, 0.8409],
                [-0.2212, -0.2903, 0.9310],
            ],
            0.5124,
            "0.5124",
        ),
        decimal(
            t,
            &[
                [-0.4540, -0.8654, 0.2122],
                [0.0134, 0.3709, 0.9286],
                [0.2711, -0.9230, 0.2732],
                [-0.8330, -0.2467, 0.4953],
                [0.9506, 0.2742, 0.1449],
                [-0.9056, 0.4002, 0.1400],
                [-0.0360, 0.9049, 0.4240],
                [0.5655, 0.1908, 0.8024],
                [-0.1636, -0.6802, 0.7145],
                [0.7675, -0.4892, 0.4142],
                [0.6443, 0.6676, 0.3729],
                [-0.5659, 0.6873, 0.4553],
                [-0.5152, 0.0297, 0.8566],
                [0.2608, -0.3214, 0.9103],
            ],
            0.5103,
            "0.5103",
        ),
        decimal(
            t,
            &[
                [-0.4330, -0.8834, 0.1790],
                [0.5947, 0.3580, 0.7198],
                [-0.9199, 0.3544, 0.1679],
                [0.6250, -0.6651, 0.4088],
                [-0.8531, -0.2469, 0.4596],
                [0.0640, 0.6012, 0.7965],
                [0.3379, 0.8924, 0.2991],
                [0.4152, -0.2369, 0.8784],
                [-0.6113, 0.4624, 0.6422],
                [-0.2007, -0.6999, 0.6854],
                [-0.4692, 0.8396, 0.2736],
                [-0.0471, 0.0997, 0.9939],
                [-0.4821, -0.2496, 0.8398],
                [0.8921, 0.4315, 0.1339],
                [0.1751, -0.9430, 0.2830],
                [0.9124, -0.1144, 0.3931],
            ],
            0.5096,
            "0.5096",
        ),
        decimal(
            t,
            &[
                [-0.3998, 0.5864, 0.7044],
                [-0.1977, -0.2985, 0.9337],
                [-0.3298, 0.2137, 0.9195],
                [0.6925, -0.4245, 0.5833],
                [0.4484, 0.8649, 0.2256],
                [0.1220, 0.7780, 0.6163],
                [0.1244, -0.6324, 0.7646],
                [-0.6623, -0.4853, 0.5709],
                [0.9697, -0.2072, 0.1294],
                [-0.1528, -0.9243, 0.3498],
                [0.4199, -0.8794, 0.2245],
                [-0.8173, 0.4916, 0.3007],
                [-0.7830, -0.6046, 0.1457],
                [0.4634, 0.3948, 0.7933],
                [0.8772, 0.2919, 0.3811],
                [-0.3433, 0.9269, 0.1515],
                [-0.8849, -0.0570, 0.4623],
                [0.4534, -0.0348, 0.8907],
            ],
            0.5082,
            "0.5082",
        ),
        decimal(
            t,
            &[
                [-0.4771, -0.3132, 0.8212],
                [-0.9316, 0.2859, 0.2241],
                [-0.8297, -0.0335, 0.5572],
                [0.7434, -0.0761, 0.6645],
                [-0.0856, -0.9817, 0.1703],
                [-0.4585, -0.7249, 0.5140],
                [0.8713, -0.4185, 0.2562],
                [-0.5864, 0.7777, 0.2262],
                [0.4133, 0.3046, 0.8581],
                [0.4841, -0.8210, 0.3025],
                [0.3804, -0.4887, 0.7852],
                [-0.0581, 0.0345, 0.9977],
                [0.0123, 0.9731, 0.2302],
                [-0.8229, -0.5475, 0.1518],
                [0.3358, 0.6873, 0.6441],
                [0.0713, -0.6120, 0.7876],
                [-0.3037, 0.6792, 0.6681],
                [0.9445, 0.2249, 0.2395],
                [-0.3920, 0.3529, 0.8496],
                [0.6895, 0.6968, 0.1978],
            ],
            0.5073,
            "0.5073",
        ),
    ]
}

/// Six-decimal hemisphere forms of the N = 7..10 optima.
pub fn optimal_precise_sets() -> Vec<GoldenSet> {
    let t = Table::OptimalPrecise;
    let tol = 5e-5;
    let mk = |rows: &[[f64; 3]], expected: f64, quoted: &'static str| GoldenSet {
        tolerance: tol,
        ..decimal(t, rows, expected, quoted)
    };
    let mut n7 = mk(
        &[
            [0.811031, 0.518332, 0.271220],
            [-0.962517, 0.0, 0.271220],
            [-0.025624, -0.942341, 0.333670],
            [0.653592, -0.508171, 0.560874],
            [-0.550186, 0.518331, 0.654697],
            [0.184470, 0.733036, 0.654697],
            [-0.110765, -0.319187, 0.941196],
        ],
        n7_closed_form(),
        "(1/7)sqrt(4+2sqrt(2)+(2 sin t2 sin p2 + sin p4)^2)",
    );
    n7.annotations = vec![("0.562784 (printed decimal)", 0.562784)];
    vec![
        n7,
        mk(
            &[
                [0.968666, 0.065740, 0.239509],
                [-0.747121, -0.620037, 0.239509],
                [-0.209859, 0.942222, 0.261106],
                [-0.650221, 0.492982, 0.578084],
                [0.622779, -0.527067, 0.578227],
                [-0.087923, -0.811125, 0.578227],
                [0.431679, 0.492111, 0.755963],
                [-0.328001, -0.034827, 0.944574],
            ],
            0.521867,
            "0.521867",
        ),
        mk(
            &[
                [-0.946974, -0.239896, 0.213751],
                [0.975285, 0.055948, 0.213751],
                [0.223587, 0.900606, 0.372717],
                [-0.484042, 0.791698, 0.372717],
                [0.49183, -0.750648, 0.441170],
                [-0.243361, -0.863797, 0.441170],
                [0.570929, 0.121485, 0.811962],
                [-0.581037, -0.055808, 0.811961],
                [-0.006217, 0.040411, 0.999164],
            ],
            0.519818,
            "0.519818",
        ),
        mk(
            &[
                [0.915980, 0.346916, 0.201568],
                [-0.967957, 0.149768, 0.201568],
                [-0.381747, -0.873784, 0.301280],
                [0.554376, -0.775821, 0.301280],
                [0.528849, 0.682951, 0.503881],
                [-0.658780, 0.558670, 0.503881],
                [-0.080984, 0.773887, 0.628125],
                [0.065374, -0.624714, 0.778112],
                [-0.455624, -0.167912, 0.874193],
                [0.480513, -0.069961, 0.874193],
            ],
            0.516808,
            "0.516808",
        ),
    ]
}

/// The exact (non-hemisphere) N = 5 optimum.
pub fn optimal_exact_n5() -> GoldenSet {
    let r33 = s(33.0);
    let y45 = s(1.5 * (1.0 + r33)) / 4.0;
    let mut g = closed(
        Table::OptimalExactN5,
        vec![
            [0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0],
            [(-3.0 + r33) / 4.0, s(-13.0 / 8.0 + 3.0 * r33 / 8.0), 0.0],
            [(3.0 - r33) / 8.0, y45, -0.5],
            [(3.0 - r33) / 8.0, y45, 0.5],
        ],
        c5_derivation_form(),
        "sqrt((9+sqrt(33))/50)",
    );
    g.annotations = vec![("(1/20)sqrt(2(9+sqrt(33)))", c5_main_text_form())];
    g
}

/// Angles quoted for the quasi-analytic N = 7 optimum.
pub const N7_ANGLES: N7Angles = N7Angles {
    phi4: 5.249546515851768,
    phi2: -1.8564089024476422,
    theta2: -4.280275193917692,
};

#[derive(Debug, Clone, Copy)]
pub struct N7Angles {
    pub phi4: f64,
    pub phi2: f64,
    pub theta2: f64,
}

/// C_7 evaluated from its quasi-analytic expression.
pub fn n7_closed_form() -> f64 {
    let N7Angles { phi4, phi2, theta2 } = N7_ANGLES;
    let t = 2.0 * theta2.sin() * phi2.sin() + phi4.sin();
    (4.0 + 2.0 * s(2.0) + t * t).sqrt() / 7.0
}

/// Residuals of the three stationarity relations printed for N = 7.
pub fn n7_residuals(a: N7Angles) -> [f64; 3] {
    let r2 = s(2.0);
    let (sp4, cp4) = a.phi4.sin_cos();
    let cp2 = a.phi2.cos();
    let (st, ct) = a.theta2.sin_cos();
    [
        cp4 + 2.0 * cp2 * st,
        ((1.0 + r2) * cp2 + (a.phi2 - a.phi4).cos()) * st,
        2.0 * (1.0 + r2) * ct - 2.0 * ct * ct
            + cp4 * (r2 + 2.0 * cp2 * st)
            + 2.0 * st * ((1.0 + r2) * cp2 + (1.0 + sp4) * st),
    ]
}

/// The unrotated N = 7 optimum generated from its angles.
pub fn n7_angle_rows(a: N7Angles) -> Vec<[f64; 3]> {
    let r = 1.0 / s(2.0);
    let (st, ct) = a.theta2.sin_cos();
    let (sp, cp) = a.phi2.sin_cos();
    vec![
        [1.0, 0.0, 0.0],
        [st * cp, st * sp, ct],
        [r, 0.0, r],
        [a.phi4.cos(), a.phi4.sin(), 0.0],
        [st * cp, st * sp, -ct],
        [0.0, 0.0, 1.0],
        [r, 0.0, r],
    ]
}

#[derive(Debug, Clone, Copy)]
pub struct N8Angles {
    pub phi2: f64,
    pub phi5: f64,
    pub phi6: f64,
}

pub const N8_ANGLES: N8Angles = N8Angles {
    phi2: 2.2542981930847485,
    phi5: 1.0982166105825837,
    phi6: 1.4603674317905544,
};

/// Residuals of the three relations printed for N = 8.
pub fn n8_residuals(a: N8Angles) -> [f64; 3] {
    let r2 = s(2.0);
    let (s2, c2) = a.phi2.sin_cos();
    let (s5, c5) = a.phi5.sin_cos();
    [
        c2 + c5 + 1.6 * a.phi6.cos(),
        (1.0 + r2) * c2 + (a.phi2 - a.phi5).cos() + 1.6 * (a.phi2 - a.phi6).cos(),
        (c2 - c5) + (s2 + s5).powi(2) + 1.6 * (s2 + s5) * a.phi6.sin() - (66.0 + 30.0 * r2) / 25.0,
    ]
}

pub fn n8_closed_form() -> f64 {
    let N8Angles { phi2, phi5, phi6 } = N8_ANGLES;
    ((107.0
        + 25.0 * s(2.0)
        + 25.0 * (phi2 - phi5).cos()
        + 40.0 * ((phi2 - phi6).cos() + (phi5 - phi6).cos()))
        / 800.0)
        .sqrt()
}

pub fn n8_angle_rows(a: N8Angles) -> Vec<[f64; 3]> {
    let r = 1.0 / s(2.0);
    let (s6, c6) = a.phi6.sin_cos();
    vec![
        [-r, 0.0, r],
        [a.phi2.cos(), a.phi2.sin(), 0.0],
        [0.0, 0.0, 1.0],
        [-1.0, 0.0, 0.0],
        [a.phi5.cos(), a.phi5.sin(), 0.0],
        [0.8 * c6, 0.8 * s6, -0.6],
        [0.8 * c6, 0.8 * s6, 0.6],
        [r, 0.0, r],
    ]
}

/// Every embedded set.
pub fn all_sets() -> Vec<GoldenSet> {
    let mut v = sjwp_sets();
    v.extend(optimal_sets());
    v.extend(optimal_large_sets());
    v.extend(optimal_precise_sets());
    v.push(optimal_exact_n5());
    v
}

/// Looks up a set by key (`table1-n4`, `table2-n6`, `sm-n20`, ...);
/// a trailing `.json` is ignored.
pub fn lookup(key: &str) -> Option<GoldenSet> {
    let key = key.strip_suffix(".json").unwrap_or(key);
    all_sets().into_iter().find(|g| g.key() == key)
}

pub fn sjwp(n: usize) -> Option<GoldenSet> {
    sjwp_sets().into_iter().find(|g| g.n == n)
}

pub fn optimal(n: usize) -> Option<GoldenSet> {
    optimal_sets()
        .into_iter()
        .chain(optimal_large_sets())
        .find(|g| g.n == n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_unique() {
        let mut keys: Vec<String> = all_sets().iter().map(GoldenSet::key).collect();
        let n = keys.len();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), n);
    }

    #[test]
    fn closed_form_rows_are_unit() {
        for g in all_sets().iter().filter(|g| g.is_closed_form() || g.tolerance == 1e-6) {
            let (_, delta) = g.measurement_set().unwrap();
            assert!(delta < 1e-12, "{} off by {delta}", g.key());
        }
    }

    #[test]
    fn decimal_rows_are_nearly_unit() {
        for g in all_sets() {
            let (_, delta) = g.measurement_set().unwrap();
            assert!(delta < 1e-3, "{} off by {delta}", g.key());
        }
    }

    #[test]
    fn lookup_accepts_json_suffix() {
        assert_eq!(lookup("table2-n6.json").unwrap().n, 6);
        assert_eq!(lookup("table1-n10").unwrap().n, 10);
        assert!(lookup("table3-n1").is_none());
    }

    #[test]
    fn set_sizes() {
        let ns: Vec<usize> = optimal_sets().iter().map(|g| g.n).collect();
        assert_eq!(ns, (2..=10).collect::<Vec<_>>());
        let ns: Vec<usize> = optimal_large_sets().iter().map(|g| g.n).collect();
        assert_eq!(ns, vec![12, 14, 16, 18, 20]);
        let ns: Vec<usize> = sjwp_sets().iter().map(|g| g.n).collect();
        assert_eq!(ns, vec![2, 3, 4, 6, 10]);
    }
}
