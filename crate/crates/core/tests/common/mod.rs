#![allow(dead_code)]

use compass_core::Point;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pt(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

/// Uniform in `[-half, half]^2`.
pub fn point_in(rng: &mut ChaCha8Rng, half: f64) -> Point {
    pt(rng.gen_range(-half..=half), rng.gen_range(-half..=half))
}

pub fn pair_in(rng: &mut ChaCha8Rng, half: f64, min_dist: f64) -> (Point, Point) {
    loop {
        let (a, b) = (point_in(rng, half), point_in(rng, half));
        if (a - b).norm() >= min_dist {
            return (a, b);
        }
    }
}

pub fn unit(angle: f64) -> Point {
    pt(angle.cos(), angle.sin())
}

#[track_caller]
pub fn assert_near(got: Point, want: Point, eps: f64) {
    assert!(
        (got - want).norm() <= eps,
        "got {got}, want {want}, off by {:e}",
        (got - want).norm()
    );
}

/// Both unordered pairs within `eps`.
#[track_caller]
pub fn assert_same_pair(got: &[Point], want: &[Point], eps: f64) {
    assert_eq!(got.len(), 2);
    assert_eq!(want.len(), 2);
    let direct = (got[0] - want[0]).norm().max((got[1] - want[1]).norm());
    let swapped = (got[0] - want[1]).norm().max((got[1] - want[0]).norm());
    assert!(direct.min(swapped) <= eps, "got {got:?}, want {want:?}");
}
