use flowsched::wireless_distribution::{MobilePathInstance, SensorPathInstance, SensorRegime};
use rand::Rng;

/// `n <= 12` nodes with sorted coordinates in `[0, 100]`.
pub fn random_mobile<R: Rng>(rng: &mut R) -> MobilePathInstance {
    let n = rng.gen_range(1..=12);
    let mut x: Vec<f64> = (0..n).map(|_| (rng.gen_range(0.0..100.0_f64) * 4.0).round() / 4.0).collect();
    x.sort_by(f64::total_cmp);
    MobilePathInstance::new(x, rng.gen_range(0.5..15.0), rng.gen_range(0.2..3.0)).unwrap()
}

/// `2 <= n <= max_n`, durations `<= 3`, sorted release times `<= 10`.
pub fn random_sensor<R: Rng>(rng: &mut R, max_n: usize, regime: SensorRegime) -> SensorPathInstance {
    let n = rng.gen_range(2..=max_n);
    let mut x: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(0..=12u8))).collect();
    x.sort_by(f64::total_cmp);
    let mut pt: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(0..=10u8))).collect();
    pt[1..].sort_by(f64::total_cmp);
    let dp = f64::from(rng.gen_range(0..=3u8));
    let d = (0..n)
        .map(|i| match regime {
            _ if i == 0 => 0.0,
            _ if i == n - 1 => f64::from(rng.gen_range(0..=3u8)),
            SensorRegime::ZeroD => 0.0,
            SensorRegime::UniformDp => dp,
            SensorRegime::GeneralInteger => f64::from(rng.gen_range(0..=3u8)),
        })
        .collect();
    SensorPathInstance::new(x, f64::from(rng.gen_range(1..=3u8)), pt, d, regime).unwrap()
}

/// Shared intermediate duration of a uniform instance.
pub fn uniform_dp(inst: &SensorPathInstance) -> f64 {
    inst.d.get(1).copied().filter(|_| inst.len() > 2).unwrap_or(0.0)
}
