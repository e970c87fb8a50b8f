//! Regions of the `(h, r)` plane that bound skeletal signatures, and exact
//! lattice-point counts.

use num_rational::Ratio;

use crate::signatures::SkeletalPoint;

type Q = Ratio<i64>;

/// The constraint `a·h + b·r ≤ c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlane {
    pub a: Q,
    pub b: Q,
    pub c: Q,
}

impl HalfPlane {
    fn new(a: i64, b: i64, c: Q) -> Self {
        HalfPlane {
            a: Q::from_integer(a),
            b: Q::from_integer(b),
            c,
        }
    }

    pub fn holds(&self, p: SkeletalPoint) -> bool {
        self.a * p.h as i64 + self.b * p.r as i64 <= self.c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// `r ≤ 2σ+2-4h`: every skeletal point for genus `σ`.
    T(u32),
    /// `r ≤ 4(σ-1+N)/N - 4h`: points reachable by groups of order `≥ N`.
    L(u32, u64),
    /// Between `r = σ+2-4h` and `r = σ+2-k-2h`, `k = ⌊σ/3⌋`.
    S(u32),
}

pub fn k_sigma(sigma: u32) -> u32 {
    sigma / 3
}

impl Region {
    pub fn half_planes(&self) -> Vec<HalfPlane> {
        let z = Q::from_integer;
        let mut planes = vec![HalfPlane::new(-1, 0, z(0))];
        match *self {
            Region::T(s) => {
                planes.push(HalfPlane::new(0, -1, z(0)));
                planes.push(HalfPlane::new(4, 1, z(2 * s as i64 + 2)));
            }
            Region::L(s, n) => {
                planes.push(HalfPlane::new(0, -1, z(0)));
                let n = n.max(1) as i64;
                planes.push(HalfPlane::new(4, 1, Q::new(4 * (s as i64 - 1 + n), n)));
            }
            Region::S(s) => {
                let s = s as i64;
                let k = k_sigma(s as u32) as i64;
                planes.push(HalfPlane::new(4, 1, z(s + 2)));
                planes.push(HalfPlane::new(-2, -1, z(-(s + 2 - k))));
            }
        }
        planes
    }

    /// Right-hand side of the `4h + r ≤ c` face every region has.
    fn upper(&self) -> Q {
        self.half_planes()
            .into_iter()
            .find(|hp| hp.a == Q::from_integer(4) && hp.b == Q::from_integer(1))
            .map(|hp| hp.c)
            .expect("each region has a 4h + r face")
    }

    pub fn contains(&self, p: SkeletalPoint) -> bool {
        self.half_planes().iter().all(|hp| hp.holds(p))
    }

    /// All integer points, sorted by `(h, r)`.
    pub fn lattice_points(&self) -> Vec<SkeletalPoint> {
        let c = self.upper().floor().to_integer();
        if c < 0 {
            return Vec::new();
        }
        let planes = self.half_planes();
        let mut out = Vec::new();
        for h in 0..=(c / 4) as u32 {
            for r in 0..=(c - 4 * h as i64) as u32 {
                let p = SkeletalPoint::new(h, r);
                if planes.iter().all(|hp| hp.holds(p)) {
                    out.push(p);
                }
            }
        }
        out
    }
}

pub fn contains(region: &Region, p: SkeletalPoint) -> bool {
    region.contains(p)
}

/// Points that cannot be the quotient data of a branched cover by a
/// surface of genus at least 2.
pub const NON_HYPERBOLIC: [SkeletalPoint; 4] = [
    SkeletalPoint::new(0, 0),
    SkeletalPoint::new(0, 1),
    SkeletalPoint::new(0, 2),
    SkeletalPoint::new(1, 0),
];

pub fn is_hyperbolic(p: SkeletalPoint) -> bool {
    !NON_HYPERBOLIC.contains(&p)
}

/// False exactly for points strictly between `r = 2σ+2-4h` and
/// `r = σ+2-3h` other than `(0, σ+3)`.
pub fn gap_allowed(sigma: u32, p: SkeletalPoint) -> bool {
    let (s, h, r) = (sigma as i64, p.h as i64, p.r as i64);
    let strictly_between = s + 2 - 3 * h < r && r < 2 * s + 2 - 4 * h;
    !strictly_between || (h == 0 && r == s + 3)
}

/// `(σ+2)(σ+3)/2`.
pub fn count_t_lattice(sigma: u32) -> u64 {
    let s = sigma as u64;
    let count = (s + 2) * (s + 3) / 2;
    debug_assert_eq!(count, Region::T(sigma).lattice_points().len() as u64);
    count
}

/// Closed form for `|S_σ|` in terms of `k = ⌊σ/3⌋`.
pub fn s_count_formula(sigma: u32) -> u64 {
    let k = k_sigma(sigma) as u64;
    if k.is_multiple_of(2) {
        (k + 2) * (k + 2) / 4
    } else {
        (k + 1) * (k + 3) / 4
    }
}

pub fn s_lattice_points(sigma: u32) -> Vec<SkeletalPoint> {
    Region::S(sigma).lattice_points()
}

/// The largest-`h` lattice point of `T(σ)`.
pub fn rightmost_point(sigma: u32) -> SkeletalPoint {
    if sigma.is_multiple_of(2) {
        SkeletalPoint::new(sigma / 2, 2)
    } else {
        SkeletalPoint::new(sigma.div_ceil(2), 0)
    }
}
