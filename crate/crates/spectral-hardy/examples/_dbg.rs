// scratch: stability probe across dims, orders, couplings, sizes
use spectral_hardy::angular::{lambda_of_alpha, mu1_constant, closed_form_mu1, SpectralConfig};
fn main() {
    let mut bad = 0;
    for &n in &[1usize, 2, 3, 4, 5, 6] {
        for &s in &[0.05f64, 0.25, 0.5, 0.75, 0.95] {
            if n as f64 <= 2.0 * s { continue; }
            for &k in &[16usize, 32, 64] {
                for &a in &[0.0f64, -1.0, 0.3, -5.0] {
                    let cfg = SpectralConfig { basis_size: k, quad_points: 2*k+8, fourier_modes: 2, tolerance: 1e-7 };
                    let r = mu1_constant(n, s, a, &cfg).unwrap();
                    let cf = closed_form_mu1(n, s, a).unwrap();
                    if let Some(exact) = cf {
                        let err = (r.mu1 - exact).abs();
                        if err > 1e-5 || !r.mu1.is_finite() {
                            println!("BAD N={n} s={s} K={k} a={a}: mu={:.6e} exact={:.6e} err={:.2e} est={:.2e}", r.mu1, exact, err, r.est_error);
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    // oracle grid tightest check at default 64
    let grid = [(3usize, 0.5f64), (3, 0.75), (2, 0.4), (4, 0.3)];
    let mut worst: f64 = 0.0;
    for &(n, s) in &grid {
        let beta = 0.5 * (n as f64 - 2.0 * s);
        for &frac in &[0.1, 0.25, 0.5, 0.75] {
            let alpha = frac * beta;
            let a = lambda_of_alpha(n, s, alpha).unwrap();
            let r = mu1_constant(n, s, a, &SpectralConfig::default()).unwrap();
            worst = worst.max((r.mu1 - (alpha*alpha - beta*beta)).abs());
        }
    }
    println!("default-config oracle worst: {:.3e}; bad cases: {bad}", worst);
}
