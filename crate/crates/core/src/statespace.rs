//! Discrete-time linear and affine state-space models
//!
//! ```text
//! x(t+1) = A x(t) + B u(t) [+ E]
//!   y(t) = C x(t) + D u(t) [+ F]
//! ```
//!
//! together with the structured matrices that link them to Hankel matrices
//! of their trajectories: the observability matrix `O_L`, the block-Toeplitz
//! convolution matrix `T_L` and the model matrix `M_L` with
//! `H_L(w) = M_L [H_L(u); H_1(x)]`.

use crate::behavior::{build_hankel, hankel_of_samples, Trajectory};
use crate::error::{Error, Result};
use crate::linalg::{numeric_rank, DenseMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct StateSpaceModel {
    a: DenseMatrix,
    b: DenseMatrix,
    c: DenseMatrix,
    d: DenseMatrix,
    /// `(E, F)` offsets of an affine model.
    offsets: Option<(Vec<f64>, Vec<f64>)>,
}

/// Recorded states `x(0), ..., x(T-1)` as rows.
#[derive(Clone, Debug, PartialEq)]
pub struct StateTrajectory {
    samples: DenseMatrix,
}

impl StateTrajectory {
    pub fn new(samples: DenseMatrix) -> Result<Self> {
        if samples.rows() == 0 {
            return Err(Error::input("state trajectory needs at least one sample"));
        }
        Ok(Self { samples })
    }

    pub fn n(&self) -> usize {
        self.samples.cols()
    }

    pub fn len(&self) -> usize {
        self.samples.rows()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn samples(&self) -> &DenseMatrix {
        &self.samples
    }

    pub fn state(&self, t: usize) -> &[f64] {
        self.samples.row(t)
    }
}

impl StateSpaceModel {
    pub fn linear(a: DenseMatrix, b: DenseMatrix, c: DenseMatrix, d: DenseMatrix) -> Result<Self> {
        let model = Self { a, b, c, d, offsets: None };
        model.validate()?;
        Ok(model)
    }

    pub fn affine(
        a: DenseMatrix,
        b: DenseMatrix,
        c: DenseMatrix,
        d: DenseMatrix,
        e: Vec<f64>,
        f: Vec<f64>,
    ) -> Result<Self> {
        let model = Self { a, b, c, d, offsets: Some((e, f)) };
        model.validate()?;
        Ok(model)
    }

    fn validate(&self) -> Result<()> {
        let n = self.a.rows();
        let m = self.b.cols();
        let p = self.c.rows();
        let shape_ok = self.a.cols() == n
            && (self.b.rows() == n || m == 0 && self.b.rows() == 0)
            && self.c.cols() == n
            && (self.d.rows() == p || m == 0 && self.d.rows() == 0)
            && self.d.cols() == m;
        if !shape_ok {
            return Err(Error::input(format!(
                "inconsistent model shapes: A {:?}, B {:?}, C {:?}, D {:?}",
                self.a.shape(),
                self.b.shape(),
                self.c.shape(),
                self.d.shape()
            )));
        }
        if let Some((e, f)) = &self.offsets {
            if e.len() != n || f.len() != p {
                return Err(Error::input("affine offsets must have lengths n and p"));
            }
            if e.iter().chain(f).any(|v| !v.is_finite()) {
                return Err(Error::input("affine offsets must be finite"));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn m(&self) -> usize {
        self.b.cols()
    }

    pub fn p(&self) -> usize {
        self.c.rows()
    }

    pub fn q(&self) -> usize {
        self.m() + self.p()
    }

    pub fn is_affine(&self) -> bool {
        self.offsets.is_some()
    }

    pub fn a(&self) -> &DenseMatrix {
        &self.a
    }

    pub fn b(&self) -> &DenseMatrix {
        &self.b
    }

    pub fn c(&self) -> &DenseMatrix {
        &self.c
    }

    pub fn d(&self) -> &DenseMatrix {
        &self.d
    }

    pub fn offsets(&self) -> Option<(&[f64], &[f64])> {
        self.offsets.as_ref().map(|(e, f)| (e.as_slice(), f.as_slice()))
    }

    /// Runs the recursion for `len` steps. `inputs` is a `T' x m` matrix with
    /// `T' >= len`; it may be omitted when `m = 0`.
    pub fn simulate(
        &self,
        x0: &[f64],
        inputs: Option<&DenseMatrix>,
        len: usize,
    ) -> Result<(Trajectory, StateTrajectory)> {
        let (n, m, p) = (self.n(), self.m(), self.p());
        if len == 0 {
            return Err(Error::input("simulation length must be at least 1"));
        }
        if x0.len() != n {
            return Err(Error::input(format!("initial state has length {}, expected {n}", x0.len())));
        }
        let zero_inputs;
        let u = match inputs {
            Some(u) => {
                if u.cols() != m || u.rows() < len {
                    return Err(Error::input(format!(
                        "inputs must be at least {len} x {m}, got {}x{}",
                        u.rows(),
                        u.cols()
                    )));
                }
                u
            }
            None if m == 0 => {
                zero_inputs = DenseMatrix::zeros(len, 0);
                &zero_inputs
            }
            None => return Err(Error::input("inputs are required when m > 0")),
        };

        let (e, f) = match &self.offsets {
            Some((e, f)) => (e.clone(), f.clone()),
            None => (vec![0.0; n], vec![0.0; p]),
        };
        let mut w = DenseMatrix::zeros(len, m + p);
        let mut xs = DenseMatrix::zeros(len, n);
        let mut x = x0.to_vec();
        for t in 0..len {
            let ut = u.row(t);
            let cx = self.c.mul_vec(&x)?;
            let du = if m == 0 { vec![0.0; p] } else { self.d.mul_vec(ut)? };
            for i in 0..m {
                w[(t, i)] = ut[i];
            }
            for i in 0..p {
                w[(t, m + i)] = cx[i] + du[i] + f[i];
            }
            for i in 0..n {
                xs[(t, i)] = x[i];
            }
            let ax = self.a.mul_vec(&x)?;
            let bu = if m == 0 { vec![0.0; n] } else { self.b.mul_vec(ut)? };
            x = (0..n).map(|i| ax[i] + bu[i] + e[i]).collect();
        }
        if w.as_slice().iter().chain(xs.as_slice()).any(|v| !v.is_finite()) {
            return Err(Error::input("simulation diverged to non-finite values"));
        }
        Ok((Trajectory::new(m, p, w)?, StateTrajectory::new(xs)?))
    }

    /// Entrywise non-negativity of all model matrices (and offsets), which
    /// for this model class is equivalent to forward invariance of the
    /// non-negative orthant.
    pub fn is_internally_positive(&self) -> bool {
        let mats = [&self.a, &self.b, &self.c, &self.d];
        mats.iter().all(|m| m.is_nonnegative(0.0))
            && self.offsets.as_ref().is_none_or(|(e, f)| e.iter().chain(f).all(|&v| v >= 0.0))
    }

    /// `[C; CA; ...; CA^{L-1}]`, a `pL x n` matrix.
    pub fn observability_matrix(&self, depth: usize) -> Result<DenseMatrix> {
        if depth == 0 {
            return Err(Error::input("depth must be at least 1"));
        }
        let mut out = DenseMatrix::zeros(0, self.n());
        let mut block = self.c.clone();
        for k in 0..depth {
            out = out.vstack(&block)?;
            if k + 1 < depth {
                block = block.matmul(&self.a)?;
            }
        }
        Ok(out)
    }

    /// Smallest `l <= n` with `rank O_l = n`, if any.
    pub fn lag(&self) -> Result<Option<usize>> {
        let n = self.n();
        if n == 0 {
            return Ok(Some(0));
        }
        for l in 1..=n {
            if numeric_rank(&self.observability_matrix(l)?, 0.0)? == n {
                return Ok(Some(l));
            }
        }
        Ok(None)
    }

    /// Lower block-triangular Toeplitz matrix (`pL x mL`) with `D` on the
    /// diagonal and `C A^{k-1} B` on the `k`-th sub-diagonal.
    pub fn convolution_matrix(&self, depth: usize) -> Result<DenseMatrix> {
        if depth == 0 {
            return Err(Error::input("depth must be at least 1"));
        }
        let (m, p) = (self.m(), self.p());
        let mut markov = Vec::with_capacity(depth);
        markov.push(self.d.clone());
        let mut cak = self.c.clone();
        for _ in 1..depth {
            markov.push(if m == 0 { DenseMatrix::zeros(p, 0) } else { cak.matmul(&self.b)? });
            cak = cak.matmul(&self.a)?;
        }
        Ok(DenseMatrix::from_fn(p * depth, m * depth, |r, c| {
            let (bi, bj) = (r / p, c / m);
            if bi >= bj {
                markov[bi - bj][(r % p, c % m)]
            } else {
                0.0
            }
        }))
    }

    /// `M_L = Π [[I, 0], [T_L, O_L]]`, a `qL x (mL + n)` matrix whose rows are
    /// ordered per time step (`u(0), y(0), u(1), y(1), ...`) to match the
    /// row order of [`build_hankel`].
    pub fn model_matrix(&self, depth: usize) -> Result<DenseMatrix> {
        let (n, m, p) = (self.n(), self.m(), self.p());
        let toeplitz = self.convolution_matrix(depth)?;
        let obs = self.observability_matrix(depth)?;
        let q = m + p;
        let mut out = DenseMatrix::zeros(q * depth, m * depth + n);
        for t in 0..depth {
            for i in 0..m {
                out[(t * q + i, t * m + i)] = 1.0;
            }
            for i in 0..p {
                let src = t * p + i;
                let dst = t * q + m + i;
                for j in 0..m * depth {
                    out[(dst, j)] = toeplitz[(src, j)];
                }
                for j in 0..n {
                    out[(dst, m * depth + j)] = obs[(src, j)];
                }
            }
        }
        Ok(out)
    }

    /// Linear model on the state `(x, 1)` equivalent to an affine model.
    /// Linear models are returned unchanged.
    pub fn augmented(&self) -> Self {
        let Some((e, f)) = &self.offsets else {
            return self.clone();
        };
        let (n, m) = (self.n(), self.m());
        let a = DenseMatrix::from_fn(n + 1, n + 1, |i, j| match (i < n, j < n) {
            (true, true) => self.a[(i, j)],
            (true, false) => e[i],
            (false, true) => 0.0,
            (false, false) => 1.0,
        });
        let b = DenseMatrix::from_fn(n + 1, m, |i, j| if i < n { self.b[(i, j)] } else { 0.0 });
        let c = DenseMatrix::from_fn(self.p(), n + 1, |i, j| if j < n { self.c[(i, j)] } else { f[i] });
        Self { a, b, c, d: self.d.clone(), offsets: None }
    }

    /// Checks `H_L(w) = M_L [H_L(u); H_1(x)]` up to relative tolerance.
    /// Affine models are checked through [`Self::augmented`] with the state
    /// extended by a constant one.
    pub fn factorization_check(
        &self,
        w: &Trajectory,
        x: &StateTrajectory,
        depth: usize,
        tol: f64,
    ) -> Result<bool> {
        if w.m() != self.m() || w.p() != self.p() || x.n() != self.n() {
            return Err(Error::input("trajectory dimensions do not match the model"));
        }
        if x.len() < w.len() + 1 - depth.min(w.len()) {
            return Err(Error::input("state trajectory is too short"));
        }
        let hw = build_hankel(w, depth)?.into_entries();
        let cols = hw.cols();
        let model = self.augmented();
        let states = if self.is_affine() {
            DenseMatrix::from_fn(x.len(), x.n() + 1, |t, i| if i < x.n() { x.state(t)[i] } else { 1.0 })
        } else {
            x.samples().clone()
        };
        let hu = hankel_of_samples(&w.inputs(), depth)?;
        let hx = hankel_of_samples(&states.select_rows(&(0..cols).collect::<Vec<_>>()), 1)?;
        let stacked = hu.vstack(&hx)?;
        let rhs = model.model_matrix(depth)?.matmul(&stacked)?;
        let err = hw.sub(&rhs)?.frobenius_norm();
        Ok(err <= tol * hw.frobenius_norm().max(1.0))
    }
}

/// Age-structured population model: fertility rates on the first row of
/// `A`, survival rates on the sub-diagonal, output the total population of
/// the last `k` age classes. Autonomous (`m = 0`) with a scalar output.
pub fn leslie_model(fertility: &[f64], survival: &[f64], k: usize) -> Result<StateSpaceModel> {
    let n = fertility.len();
    if n == 0 {
        return Err(Error::input("Leslie model needs at least one age class"));
    }
    if survival.len() != n - 1 {
        return Err(Error::input(format!("expected {} survival rates, got {}", n - 1, survival.len())));
    }
    if k == 0 || k > n {
        return Err(Error::input(format!("output classes k = {k} must lie in 1..={n}")));
    }
    if fertility.iter().any(|&a| !a.is_finite() || a < 0.0) {
        return Err(Error::input("fertility rates must be finite and non-negative"));
    }
    if survival.iter().any(|&b| !(0.0..=1.0).contains(&b)) {
        return Err(Error::input("survival rates must lie in [0, 1]"));
    }
    let a = DenseMatrix::from_fn(n, n, |i, j| {
        if i == 0 {
            fertility[j]
        } else if j + 1 == i {
            survival[j]
        } else {
            0.0
        }
    });
    let c = DenseMatrix::from_fn(1, n, |_, j| if j >= n - k { 1.0 } else { 0.0 });
    StateSpaceModel::linear(a, DenseMatrix::zeros(n, 0), c, DenseMatrix::zeros(1, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn scalar(a: f64, b: f64, c: f64, d: f64) -> StateSpaceModel {
        let s = |v: f64| DenseMatrix::from_rows(&[[v]]).unwrap();
        StateSpaceModel::linear(s(a), s(b), s(c), s(d)).unwrap()
    }

    fn autonomous_scalar(a: f64, c: f64) -> StateSpaceModel {
        let s = |v: f64| DenseMatrix::from_rows(&[[v]]).unwrap();
        StateSpaceModel::linear(s(a), DenseMatrix::zeros(1, 0), s(c), DenseMatrix::zeros(1, 0)).unwrap()
    }

    fn paper_leslie() -> StateSpaceModel {
        leslie_model(&[0.0, 0.0, 0.0, 1.0], &[1.0, 1.0, 1.0], 2).unwrap()
    }

    #[test]
    fn nilpotent_scalar_simulation() {
        let (w, x) = autonomous_scalar(0.0, 1.0).simulate(&[5.0], None, 3).unwrap();
        assert_eq!(w.stacked(), vec![5.0, 0.0, 0.0]);
        assert_eq!(x.samples().column(0), vec![5.0, 0.0, 0.0]);
    }

    #[test]
    fn leslie_simulation_from_first_class() {
        let (w, x) = paper_leslie().simulate(&[1.0, 0.0, 0.0, 0.0], None, 7).unwrap();
        assert_eq!(w.stacked(), vec![0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0]);
        let first4 = x.samples().select_rows(&[0, 1, 2, 3]);
        assert_eq!(first4, DenseMatrix::identity(4));
    }

    #[test]
    fn affine_scalar_simulation() {
        let s = |v: f64| DenseMatrix::from_rows(&[[v]]).unwrap();
        let model = StateSpaceModel::affine(
            s(0.0),
            DenseMatrix::zeros(1, 0),
            s(1.0),
            DenseMatrix::zeros(1, 0),
            vec![1.0],
            vec![0.0],
        )
        .unwrap();
        let (w, _) = model.simulate(&[0.0], None, 3).unwrap();
        assert_eq!(w.stacked(), vec![0.0, 1.0, 1.0]);
    }

    #[test]
    fn simulate_rejects_bad_dimensions() {
        let model = scalar(0.5, 1.0, 1.0, 0.0);
        assert!(model.simulate(&[0.0, 1.0], None, 3).is_err());
        assert!(model.simulate(&[0.0], None, 3).is_err());
        let short = DenseMatrix::zeros(2, 1);
        assert!(model.simulate(&[0.0], Some(&short), 3).is_err());
    }

    #[test]
    fn positivity() {
        assert!(paper_leslie().is_internally_positive());
        let a = DenseMatrix::from_rows(&[[0.0, -1.0], [0.0, 0.0]]).unwrap();
        let neg = StateSpaceModel::linear(
            a,
            DenseMatrix::zeros(2, 1),
            DenseMatrix::zeros(1, 2),
            DenseMatrix::zeros(1, 1),
        )
        .unwrap();
        assert!(!neg.is_internally_positive());
        let zero = StateSpaceModel::linear(
            DenseMatrix::zeros(2, 2),
            DenseMatrix::zeros(2, 1),
            DenseMatrix::zeros(1, 2),
            DenseMatrix::zeros(1, 1),
        )
        .unwrap();
        assert!(zero.is_internally_positive());
    }

    #[test]
    fn observability_examples() {
        let id = StateSpaceModel::linear(
            DenseMatrix::identity(2),
            DenseMatrix::zeros(2, 0),
            DenseMatrix::identity(2),
            DenseMatrix::zeros(2, 0),
        )
        .unwrap();
        let o = id.observability_matrix(2).unwrap();
        assert_eq!(o, DenseMatrix::identity(2).vstack(&DenseMatrix::identity(2)).unwrap());

        let o4 = paper_leslie().observability_matrix(4).unwrap();
        let h4 = DenseMatrix::from_rows(&[
            [0.0, 0.0, 1.0, 1.0],
            [0.0, 1.0, 1.0, 0.0],
            [1.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert_eq!(o4, h4);

        let o = autonomous_scalar(2.0, 3.0).observability_matrix(3).unwrap();
        assert_eq!(o.column(0), vec![3.0, 6.0, 12.0]);
    }

    #[test]
    fn lag_examples() {
        let m = StateSpaceModel::linear(
            DenseMatrix::zeros(2, 2),
            DenseMatrix::zeros(2, 0),
            DenseMatrix::identity(2),
            DenseMatrix::zeros(2, 0),
        )
        .unwrap();
        assert_eq!(m.lag().unwrap(), Some(1));
        assert_eq!(autonomous_scalar(0.3, 2.0).lag().unwrap(), Some(1));
        // rank O_4 = 3 < 4 for the displayed Leslie pair.
        assert_eq!(numeric_rank(&paper_leslie().observability_matrix(4).unwrap(), 0.0).unwrap(), 3);
        assert_eq!(paper_leslie().lag().unwrap(), None);
    }

    #[test]
    fn convolution_examples() {
        let auto = autonomous_scalar(0.5, 1.0);
        let t = auto.convolution_matrix(3).unwrap();
        assert_eq!(t.shape(), (3, 0));
        let model = scalar(0.5, 1.0, 1.0, 0.0);
        assert_eq!(model.convolution_matrix(1).unwrap(), DenseMatrix::from_rows(&[[0.0]]).unwrap());
        let t3 = model.convolution_matrix(3).unwrap();
        assert_eq!(t3.to_rows(), vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.5, 1.0, 0.0]]);
    }

    #[test]
    fn model_matrix_examples() {
        let leslie = paper_leslie();
        assert_eq!(leslie.model_matrix(4).unwrap(), leslie.observability_matrix(4).unwrap());

        let m2 = scalar(0.5, 1.0, 1.0, 0.0).model_matrix(2).unwrap();
        assert_eq!(
            m2.to_rows(),
            vec![vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0], vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 0.5],]
        );

        // Static gain (n = 0): rows alternate u(t), D u(t).
        let stat = StateSpaceModel::linear(
            DenseMatrix::zeros(0, 0),
            DenseMatrix::zeros(0, 1),
            DenseMatrix::zeros(1, 0),
            DenseMatrix::from_rows(&[[3.0]]).unwrap(),
        )
        .unwrap();
        let ms = stat.model_matrix(2).unwrap();
        assert_eq!(ms.to_rows(), vec![vec![1.0, 0.0], vec![3.0, 0.0], vec![0.0, 1.0], vec![0.0, 3.0]]);
    }

    #[test]
    fn model_matrix_columns_are_responses_to_basis_excitations() {
        // Column k of M_L is the stacked trajectory for the k-th unit
        // input/initial-state excitation.
        let model = scalar(0.5, 1.0, 1.0, 0.0);
        let depth = 2;
        let ml = model.model_matrix(depth).unwrap();
        for k in 0..depth + 1 {
            let mut u = DenseMatrix::zeros(depth, 1);
            let mut x0 = [0.0];
            if k < depth {
                u[(k, 0)] = 1.0;
            } else {
                x0[0] = 1.0;
            }
            let (w, _) = model.simulate(&x0, Some(&u), depth).unwrap();
            assert_eq!(ml.column(k), w.stacked());
        }
    }

    #[test]
    fn factorization_identity_on_leslie_data() {
        let model = paper_leslie();
        let (w, x) = model.simulate(&[1.0, 0.0, 0.0, 0.0], None, 7).unwrap();
        assert!(model.factorization_check(&w, &x, 4, 1e-12).unwrap());
    }

    #[test]
    fn factorization_detects_corruption() {
        let model = paper_leslie();
        let (w, x) = model.simulate(&[1.0, 0.0, 0.0, 0.0], None, 7).unwrap();
        let mut s = w.samples().clone();
        s[(2, 0)] += 1.0;
        let bad = Trajectory::new(0, 1, s).unwrap();
        assert!(!model.factorization_check(&bad, &x, 4, 1e-9).unwrap());
    }

    #[test]
    fn factorization_identity_on_random_models() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for trial in 0..60 {
            let n = rng.gen_range(0..4);
            let m = rng.gen_range(0..3);
            let p = rng.gen_range(1..3);
            let mut g = |r, c| DenseMatrix::from_fn(r, c, |_, _| rng.gen_range(-1.0..1.0));
            let (a, b, c, d) = (g(n, n).scale(0.7), g(n, m), g(p, n), g(p, m));
            let model = if trial % 2 == 0 {
                StateSpaceModel::linear(a, b, c, d).unwrap()
            } else {
                let e = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let f = (0..p).map(|_| rng.gen_range(-1.0..1.0)).collect();
                StateSpaceModel::affine(a, b, c, d, e, f).unwrap()
            };
            let t = rng.gen_range(1..20);
            let u = DenseMatrix::from_fn(t, m, |_, _| rng.gen_range(-1.0..1.0));
            let x0: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let (w, x) = model.simulate(&x0, Some(&u), t).unwrap();
            let depth = rng.gen_range(1..=t.min(6));
            assert!(model.factorization_check(&w, &x, depth, 1e-10).unwrap());
        }
    }

    #[test]
    fn leslie_constructor() {
        let m = paper_leslie();
        assert_eq!(
            m.a().to_rows(),
            vec![
                vec![0.0, 0.0, 0.0, 1.0],
                vec![1.0, 0.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0, 0.0],
                vec![0.0, 0.0, 1.0, 0.0],
            ]
        );
        assert_eq!(m.c().to_rows(), vec![vec![0.0, 0.0, 1.0, 1.0]]);
        assert_eq!((m.n(), m.m(), m.p()), (4, 0, 1));

        let single = leslie_model(&[2.0], &[], 1).unwrap();
        assert_eq!(single.a().as_slice(), &[2.0]);
        assert_eq!(single.c().as_slice(), &[1.0]);

        let dead = leslie_model(&[0.0, 0.0], &[0.0], 1).unwrap();
        let (w, x) = dead.simulate(&[3.0, 2.0], None, 3).unwrap();
        assert_eq!(x.state(1), &[0.0, 0.0]);
        assert_eq!(w.stacked(), vec![2.0, 0.0, 0.0]);

        assert!(leslie_model(&[-1.0, 0.0], &[0.5], 1).is_err());
        assert!(leslie_model(&[1.0, 0.0], &[1.5], 1).is_err());
        assert!(leslie_model(&[1.0, 0.0], &[0.5], 3).is_err());
    }

    #[test]
    fn observability_prefix_property() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let n = rng.gen_range(1..4);
            let p = rng.gen_range(1..3);
            let a = DenseMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
            let c = DenseMatrix::from_fn(p, n, |_, _| rng.gen_range(-1.0..1.0));
            let model =
                StateSpaceModel::linear(a, DenseMatrix::zeros(n, 0), c, DenseMatrix::zeros(p, 0)).unwrap();
            let l = rng.gen_range(1..5);
            let small = model.observability_matrix(l).unwrap();
            let big = model.observability_matrix(l + 1).unwrap();
            assert_eq!(big.select_rows(&(0..p * l).collect::<Vec<_>>()), small);
        }
    }
}
