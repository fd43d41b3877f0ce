//! Shared test helpers: an independent primality oracle and the reference
//! table values, transcribed as printed (misprints included).

#![allow(dead_code)]

/// Deterministic Miller-Rabin with the first twelve prime bases; exact for
/// every `n < 3.3 * 10^24`, so for all of `u64`.
pub fn is_prime_oracle(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// `(k, primes in [2^(k-1), 2^k), floor of the density bound)`.
pub const T1: &[(u32, u64, u64)] = &[
    (8, 23, 22),
    (9, 43, 40),
    (10, 75, 73),
    (11, 137, 133),
    (12, 255, 245),
    (13, 464, 452),
    (14, 872, 841),
    (15, 1612, 1569),
    (16, 3030, 2943),
    (17, 5709, 5541),
    (18, 10749, 10466),
    (19, 20390, 19831),
    (20, 38635, 37679),
];

/// `(k, M_opt, u_k)`.
pub const T2: &[(u32, u32, f64)] = &[
    (60, 9, 0.204541),
    (61, 9, 0.196467),
    (62, 9, 0.188917),
    (63, 9, 0.181868),
    (64, 9, 0.175296),
    (65, 9, 0.169176),
    (66, 9, 0.163486),
    (67, 9, 0.158204),
    (68, 10, 0.151309),
    (69, 10, 0.144807),
    (70, 10, 0.138718),
    (71, 10, 0.133020),
    (72, 10, 0.127693),
    (74, 10, 0.122717),
    (75, 10, 0.113743),
    (76, 10, 0.109708),
    (77, 11, 0.105817),
    (78, 11, 0.101064),
    (79, 11, 0.096609),
    (80, 11, 0.092435),
    (81, 11, 0.088527),
    (82, 11, 0.084870),
    (83, 11, 0.081449),
    (84, 11, 0.078251),
    (85, 11, 0.075262),
    (86, 11, 0.072471),
    (87, 11, 0.069865),
    (88, 12, 0.066918),
    (89, 12, 0.063918),
    (90, 12, 0.061105),
    (91, 12, 0.058467),
    (92, 12, 0.055994),
    (93, 12, 0.053676),
    (94, 12, 0.0515047),
    (95, 12, 0.0494708),
    (96, 12, 0.0475661),
    (97, 12, 0.0457829),
    (98, 12, 0.044114),
    (99, 13, 0.043620),
    (100, 13, 0.040361),
];

pub const T3: &[(u32, u32, f64)] = &[
    (42, 8, 0.199683),
    (43, 8, 0.189917),
    (44, 8, 0.181164),
    (45, 8, 0.173352),
    (46, 8, 0.166410),
    (47, 8, 0.160268),
    (48, 8, 0.154860),
    (49, 9, 0.147791),
    (50, 9, 0.140038),
    (51, 9, 0.133018),
    (52, 9, 0.126677),
    (53, 9, 0.120964),
    (54, 9, 0.115831),
    (55, 9, 0.111229),
    (56, 9, 0.107117),
    (57, 10, 0.102671),
    (58, 10, 0.097171),
    (59, 10, 0.092159),
];

/// `(k, (M_opt_1, v_k1), optional (M_opt_2, v_k2))`.
pub type TwoRoundRow = (u32, (u32, f64), Option<(u32, f64)>);

pub const T4: &[TwoRoundRow] = &[
    (30, (6, 0.239294), Some((8, 0.000602))),
    (31, (6, 0.235818), Some((8, 0.000544))),
    (32, (7, 0.232670), Some((8, 0.000360))),
    (33, (7, 0.220337), Some((9, 0.000314))),
    (34, (7, 0.209791), None),
    (35, (7, 0.200868), None),
    (36, (7, 0.193406), None),
    (37, (7, 0.187248), None),
    (38, (7, 0.182247), None),
    (39, (7, 0.178267), None),
    (40, (7, 0.175183), None),
    (41, (8, 0.166822), None),
];

pub const T5: &[TwoRoundRow] = &[
    (17, (4, 0.253449), Some((6, 0.004786))),
    (18, (4, 0.256262), Some((6, 0.004075))),
    (19, (4, 0.260073), Some((6, 0.003510))),
    (20, (5, 0.247789), Some((6, 0.003088))),
    (21, (5, 0.235446), Some((6, 0.002760))),
    (22, (5, 0.226473), Some((7, 0.001935))),
    (23, (5, 0.220211), Some((7, 0.001650))),
    (24, (5, 0.216189), Some((7, 0.001424))),
    (25, (5, 0.214003), Some((7, 0.001246))),
    (26, (5, 0.213406), Some((8, 0.000926))),
    (27, (6, 0.209426), None),
    (28, (6, 0.197899), None),
    (29, (6, 0.188524), None),
];

/// Exact `q_{k,1}` for `k = 2..16`.
pub const EXACT_Q: &[(u32, f64)] = &[
    (2, 0.0),
    (3, 0.0),
    (4, 0.0),
    (5, 0.0),
    (6, 0.009725),
    (7, 0.027481),
    (8, 0.019684),
    (9, 0.016090),
    (10, 0.012924),
    (11, 0.008977),
    (12, 0.006131),
    (13, 0.006737),
    (14, 0.003987),
    (15, 0.001641),
    (16, 0.001095),
];

/// `(c, [(k, bits for t = 1..10)])`.
pub const T6: &[(u32, [(u32, [u32; 10]); 7])] = &[
    (
        1,
        [
            (100, [0, 6, 12, 17, 21, 25, 28, 31, 33, 35]),
            (200, [3, 15, 24, 32, 38, 43, 48, 52, 56, 59]),
            (400, [11, 30, 42, 53, 62, 69, 76, 83, 89, 94]),
            (512, [15, 36, 51, 62, 72, 81, 83, 97, 104, 110]),
            (1024, [31, 61, 81, 98, 112, 125, 137, 148, 158, 167]),
            (2048, [54, 96, 125, 149, 169, 188, 205, 220, 235, 249]),
            (4096, [89, 147, 187, 221, 251, 277, 302, 324, 345, 365]),
        ],
    ),
    (
        5,
        [
            (100, [0, 2, 8, 12, 17, 20, 23, 26, 28, 31]),
            (200, [0, 11, 20, 27, 33, 38, 43, 47, 51, 55]),
            (400, [7, 25, 38, 48, 57, 65, 72, 78, 84, 90]),
            (512, [11, 32, 46, 58, 68, 77, 85, 92, 99, 106]),
            (1024, [26, 56, 76, 93, 108, 120, 132, 143, 153, 163]),
            (2048, [50, 91, 120, 144, 165, 183, 200, 216, 230, 244]),
            (4096, [84, 142, 183, 217, 246, 273, 297, 320, 341, 361]),
        ],
    ),
    (
        10,
        [
            (100, [0, 0, 6, 10, 15, 18, 21, 24, 26, 29]),
            (200, [0, 9, 18, 25, 31, 36, 41, 45, 49, 53]),
            (400, [5, 23, 36, 46, 55, 63, 70, 76, 82, 88]),
            (512, [9, 30, 44, 56, 66, 75, 83, 90, 97, 104]),
            (1024, [24, 54, 74, 91, 106, 118, 130, 141, 151, 161]),
            (2048, [48, 89, 118, 142, 163, 181, 198, 214, 228, 242]),
            (4096, [82, 140, 181, 215, 244, 271, 295, 318, 339, 359]),
        ],
    ),
];
