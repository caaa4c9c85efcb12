//! Dormand-Prince 5(4) with step-size control and the 4th-order continuous
//! extension, sampling the solution at caller-supplied output times.

/// Butcher tableau of DOPRI5.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

/// Difference between the 5th- and 4th-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Dense-output weights (Hairer, Nørsett & Wanner, `dopri5`).
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

#[derive(Debug, Clone, PartialEq)]
pub struct StepFailure {
    pub time: f64,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for Dopri5 {
    fn default() -> Self {
        Dopri5 {
            rtol: 1e-9,
            atol: 1e-12,
            max_steps: 5_000_000,
        }
    }
}

fn axpy<const N: usize>(y: &[f64; N], terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (c, k) in terms {
        for (o, v) in out.iter_mut().zip(k.iter()) {
            *o += c * v;
        }
    }
    out
}

impl Dopri5 {
    fn scaled_norm<const N: usize>(&self, v: &[f64; N], y0: &[f64; N], y1: &[f64; N]) -> f64 {
        let sum: f64 = (0..N)
            .map(|i| {
                let sk = self.atol + self.rtol * y0[i].abs().max(y1[i].abs());
                (v[i] / sk).powi(2)
            })
            .sum();
        (sum / N as f64).sqrt()
    }

    fn initial_step<const N: usize, F>(
        &self,
        f: &mut F,
        t: f64,
        y: &[f64; N],
        k1: &[f64; N],
        span: f64,
    ) -> f64
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
    {
        let d0 = self.scaled_norm(y, y, y);
        let d1 = self.scaled_norm(k1, y, y);
        let h0 = if d0 < 1e-5 || d1 < 1e-5 {
            1e-6
        } else {
            0.01 * d0 / d1
        };
        let h0 = h0.min(span);
        let y1 = axpy(y, &[(h0, k1)]);
        let k2 = f(t + h0, &y1);
        let diff: [f64; N] = std::array::from_fn(|i| k2[i] - k1[i]);
        let d2 = self.scaled_norm(&diff, y, y) / h0;
        let h1 = if d1.max(d2) <= 1e-15 {
            (h0 * 1e-3).max(1e-6)
        } else {
            (0.01 / d1.max(d2)).powf(0.2)
        };
        (100.0 * h0).min(h1).min(span)
    }

    /// Integrates y' = f(t, y) from `t_out[0]` and returns y at every entry
    /// of `t_out`, which must be strictly increasing.
    pub fn solve<const N: usize, F>(
        &self,
        mut f: F,
        t_out: &[f64],
        y0: [f64; N],
    ) -> Result<Vec<[f64; N]>, StepFailure>
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
    {
        let mut out = Vec::with_capacity(t_out.len());
        let Some((&t_start, rest)) = t_out.split_first() else {
            return Ok(out);
        };
        out.push(y0);
        let Some(&t_end) = rest.last() else {
            return Ok(out);
        };

        let mut t = t_start;
        let mut y = y0;
        let mut k1 = f(t, &y);
        let mut h = self.initial_step(&mut f, t, &y, &k1, t_end - t_start);
        let mut next = 1;
        let mut steps = 0usize;
        let mut last_rejected = false;

        while next < t_out.len() {
            steps += 1;
            if steps > self.max_steps {
                return Err(StepFailure {
                    time: t,
                    reason: format!("exceeded {} steps", self.max_steps),
                });
            }
            if h <= 1e-14 * t.abs().max(1.0) {
                return Err(StepFailure {
                    time: t,
                    reason: format!("step size underflow (h = {h:e})"),
                });
            }
            let last_step = t + h >= t_end;
            if last_step {
                h = t_end - t;
            }

            let k2 = f(t + C2 * h, &axpy(&y, &[(h * A21, &k1)]));
            let k3 = f(t + C3 * h, &axpy(&y, &[(h * A31, &k1), (h * A32, &k2)]));
            let k4 = f(
                t + C4 * h,
                &axpy(&y, &[(h * A41, &k1), (h * A42, &k2), (h * A43, &k3)]),
            );
            let k5 = f(
                t + C5 * h,
                &axpy(
                    &y,
                    &[
                        (h * A51, &k1),
                        (h * A52, &k2),
                        (h * A53, &k3),
                        (h * A54, &k4),
                    ],
                ),
            );
            let k6 = f(
                t + h,
                &axpy(
                    &y,
                    &[
                        (h * A61, &k1),
                        (h * A62, &k2),
                        (h * A63, &k3),
                        (h * A64, &k4),
                        (h * A65, &k5),
                    ],
                ),
            );
            let y_new = axpy(
                &y,
                &[
                    (h * A71, &k1),
                    (h * A73, &k3),
                    (h * A74, &k4),
                    (h * A75, &k5),
                    (h * A76, &k6),
                ],
            );
            let k7 = f(t + h, &y_new);

            let err_vec: [f64; N] = std::array::from_fn(|i| {
                h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i])
            });
            let err = self.scaled_norm(&err_vec, &y, &y_new);
            if !err.is_finite() || y_new.iter().any(|v| !v.is_finite()) {
                return Err(StepFailure {
                    time: t,
                    reason: "non-finite state or error estimate".into(),
                });
            }

            if err <= 1.0 {
                let t_new = if last_step { t_end } else { t + h };
                while next < t_out.len() && t_out[next] <= t_new {
                    if t_out[next] == t_new {
                        out.push(y_new);
                    } else {
                        let theta = (t_out[next] - t) / h;
                        out.push(dense(&y, &y_new, [&k1, &k3, &k4, &k5, &k6, &k7], h, theta));
                    }
                    next += 1;
                }
                t = t_new;
                y = y_new;
                k1 = k7;
                let mut factor = if err == 0.0 {
                    MAX_FACTOR
                } else {
                    (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
                };
                if last_rejected {
                    factor = factor.min(1.0);
                }
                last_rejected = false;
                h *= factor;
            } else {
                last_rejected = true;
                h *= (SAFETY * err.powf(-0.2)).max(MIN_FACTOR);
            }
        }
        Ok(out)
    }
}

fn dense<const N: usize>(
    y0: &[f64; N],
    y1: &[f64; N],
    [k1, k3, k4, k5, k6, k7]: [&[f64; N]; 6],
    h: f64,
    theta: f64,
) -> [f64; N] {
    let theta1 = 1.0 - theta;
    std::array::from_fn(|i| {
        let ydiff = y1[i] - y0[i];
        let bspl = h * k1[i] - ydiff;
        let r4 = ydiff - h * k7[i] - bspl;
        let r5 = h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i]);
        y0[i] + theta * (ydiff + theta1 * (bspl + theta * (r4 + theta1 * r5)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay_at_output_points() {
        let solver = Dopri5 {
            rtol: 1e-10,
            atol: 1e-12,
            ..Default::default()
        };
        let grid: Vec<f64> = (0..=50).map(|i| i as f64 * 0.1).collect();
        let ys = solver
            .solve(|_, y: &[f64; 1]| [-y[0]], &grid, [1.0])
            .unwrap();
        for (t, y) in grid.iter().zip(&ys) {
            assert!((y[0] - (-t).exp()).abs() < 1e-9, "t = {t}");
        }
    }

    #[test]
    fn dense_output_between_steps_is_accurate() {
        // loose tolerance => long steps, so most outputs are interpolated
        let solver = Dopri5 {
            rtol: 1e-6,
            atol: 1e-9,
            ..Default::default()
        };
        let grid: Vec<f64> = (0..=2000).map(|i| i as f64 * 0.01).collect();
        let ys = solver
            .solve(|_, y: &[f64; 2]| [y[1], -y[0]], &grid, [1.0, 0.0])
            .unwrap();
        let worst = grid
            .iter()
            .zip(&ys)
            .map(|(t, y)| (y[0] - t.cos()).abs().max((y[1] + t.sin()).abs()))
            .fold(0.0, f64::max);
        assert!(worst < 1e-5, "worst error {worst}");
        assert!(worst > 0.0);
    }

    #[test]
    fn error_shrinks_with_tolerance() {
        let grid = [0.0, 3.7, 10.0];
        let run = |rtol: f64| {
            let solver = Dopri5 {
                rtol,
                atol: rtol * 1e-3,
                ..Default::default()
            };
            let ys = solver
                .solve(|_, y: &[f64; 2]| [y[1], -y[0]], &grid, [1.0, 0.0])
                .unwrap();
            (ys[2][0] - 10f64.cos()).abs()
        };
        assert!(run(1e-10) < run(1e-6) * 1e-2);
    }

    #[test]
    fn single_point_grid_returns_initial_state() {
        let ys = Dopri5::default()
            .solve(
                |_, _: &[f64; 1]| panic!("no evaluation expected"),
                &[0.0],
                [4.0],
            )
            .unwrap();
        assert_eq!(ys, vec![[4.0]]);
    }

    #[test]
    fn step_budget_exhaustion_reports_time() {
        let solver = Dopri5 {
            max_steps: 3,
            ..Default::default()
        };
        let err = solver
            .solve(|_, y: &[f64; 2]| [y[1], -y[0]], &[0.0, 1000.0], [1.0, 0.0])
            .unwrap_err();
        assert!(err.time > 0.0 && err.time < 1000.0);
        assert!(err.reason.contains("steps"));
    }

    #[test]
    fn blow_up_is_reported() {
        let err = Dopri5::default()
            .solve(|_, y: &[f64; 1]| [y[0] * y[0]], &[0.0, 2.0], [1.0])
            .unwrap_err();
        assert!(err.time <= 1.0 + 1e-6);
    }
}
