use std::sync::Arc;

use super::chain::{check_structural, ChainTerm, Claim, ClaimChecker, ExactChainCertificate};
use super::tower::ITWitness;
use super::BoundsError;
use crate::algebra::{build_layered, AlgebraData, LayerInput};
use crate::linalg::{Basis, Mat, Scalar};
use crate::modules::{
    find_isomorphism, hom_space, projective_cover, syzygy, DirectSum, IsoResult, ModuleError, ModuleHom, ModuleRep,
    SearchConfig,
};

/// `Γ = End_Λ(P)^op` for a multiplicity-free projective `P = ⊕_k P(v_k)`,
/// with the data needed to move modules between `Λ` and `Γ`.
#[derive(Clone, Debug)]
pub struct EndoTransportPackage {
    pub lambda: Arc<AlgebraData>,
    /// Vertex of `Λ` for each summand; summand `k` is vertex `k` of `Γ`.
    pub summands: Vec<usize>,
    pub p: ModuleRep,
    inclusions: Vec<ModuleHom>,
    projections: Vec<ModuleHom>,
    end_basis: Vec<ModuleHom>,
    pub gamma: Arc<AlgebraData>,
    /// Column `j` holds the `end_basis` coordinates of the `j`-th basis element of `Γ`.
    gamma_to_end: Mat,
}

/// `Hom_Λ(P, N)` as a `Γ`-module, with the homomorphism behind each basis vector.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: ModuleRep,
    pub of: ModuleRep,
    pub basis: Vec<ModuleHom>,
    coords: Option<Basis>,
}

pub(crate) fn flatten(h: &ModuleHom) -> Vec<Scalar> {
    h.blocks.iter().flat_map(|b| (0..b.rows()).flat_map(move |i| b.row(i).to_vec())).collect()
}

fn flat_mat(homs: &[ModuleHom], len: usize, field: crate::linalg::Field) -> Mat {
    let cols: Vec<Mat> = homs.iter().map(|h| Mat::column_vector(field, flatten(h))).collect();
    Mat::hstack_all(field, len, &cols)
}

fn flat_len(src: &ModuleRep, tgt: &ModuleRep) -> usize {
    src.dims().iter().zip(tgt.dims()).map(|(a, b)| a * b).sum()
}

fn combine(homs: &[ModuleHom], coeffs: &[Scalar], src: &ModuleRep, tgt: &ModuleRep) -> ModuleHom {
    let mut acc = ModuleHom::zero(src, tgt);
    for (h, c) in homs.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&h.scale(c));
        }
    }
    acc
}

/// Coordinates of an algebra element with source `v` in the basis of `ModuleRep::projective(alg, v)`.
fn projective_coords(alg: &AlgebraData, v: usize, x: &[Scalar]) -> Vec<Scalar> {
    let basis: Vec<usize> = (0..alg.num_vertices()).flat_map(|t| alg.peirce_block(t, v)).collect();
    basis.iter().map(|&b| x[b].clone()).collect()
}

/// Inverse of [`projective_coords`].
fn projective_element(alg: &AlgebraData, v: usize, c: &[Scalar]) -> Vec<Scalar> {
    let basis: Vec<usize> = (0..alg.num_vertices()).flat_map(|t| alg.peirce_block(t, v)).collect();
    let mut x = alg.zero_vec();
    for (k, &b) in basis.iter().enumerate() {
        x[b] = c[k].clone();
    }
    x
}

/// A direct sum of indecomposable projectives of `alg`, summand by summand.
fn projective_sum(alg: &Arc<AlgebraData>, summands: &[usize]) -> Result<DirectSum, ModuleError> {
    let ps = summands.iter().map(|&v| ModuleRep::projective(alg, v)).collect::<Result<Vec<_>, _>>()?;
    DirectSum::of(alg, &ps)
}

/// Builds `Γ = End_Λ(⊕_k P(v_k))^op`; the vertices must be distinct.
pub fn end_algebra(lambda: &Arc<AlgebraData>, vertices: &[usize]) -> Result<EndoTransportPackage, BoundsError> {
    lambda.require_radical()?;
    let mut seen = vertices.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != vertices.len() || vertices.is_empty() {
        return Err(BoundsError::NotBasic(format!("{vertices:?}")));
    }
    let f = lambda.field();
    let sum = projective_sum(lambda, vertices)?;
    let p = sum.module.clone();
    if !syzygy(&p, 1)?.is_zero() {
        return Err(BoundsError::NotProjective("first syzygy is nonzero".into()));
    }
    let end_basis = hom_space(&p, &p)?;
    let len = flat_len(&p, &p);
    let end_coords = Basis::new(flat_mat(&end_basis, len, f)).map_err(ModuleError::from)?;
    let coords_of = |h: &ModuleHom| -> Vec<Scalar> {
        end_coords.coords_vec(&flatten(h)).expect("endomorphism lies in the hom space")
    };
    let d = end_basis.len();
    let to_hom = |x: &[Scalar]| combine(&end_basis, x, &p, &p);
    // Γ product: x ·_Γ y = y ∘ x
    let mul = |x: &[Scalar], y: &[Scalar]| coords_of(&to_hom(y).compose(&to_hom(x)));
    let idempotents: Vec<Vec<Scalar>> =
        (0..vertices.len()).map(|k| coords_of(&sum.inclusions[k].compose(&sum.projections[k]))).collect();
    // radical: endomorphisms with image in rad P
    let (_, top) = p.quotient(&p.radical())?;
    let top_len = flat_len(&p, &top.target);
    let top_mat = flat_mat(&end_basis.iter().map(|h| top.compose(h)).collect::<Vec<_>>(), top_len, f);
    let radical = if top_len == 0 { Mat::identity(f, d) } else { top_mat.kernel_basis() };
    let raw_labels: Vec<String> = (1..=d).map(|i| format!("h{i}")).collect();
    let names: Vec<String> = vertices.iter().map(|&v| lambda.vertex_name(v).to_string()).collect();
    let input = LayerInput {
        name: format!("End({})^op", names.iter().map(|n| format!("P({n})")).collect::<Vec<_>>().join("+")),
        field: f,
        mul: &mul,
        span: Mat::identity(f, d),
        idempotents,
        vertex_names: names,
        radical,
        raw_labels: &raw_labels,
    };
    let (gamma, gamma_to_end) = build_layered(&input)?;
    gamma.require_radical()?;
    Ok(EndoTransportPackage {
        lambda: lambda.clone(),
        summands: vertices.to_vec(),
        p,
        inclusions: sum.inclusions,
        projections: sum.projections,
        end_basis,
        gamma: Arc::new(gamma),
        gamma_to_end,
    })
}

impl HomModule {
    pub fn coords_of(&self, h: &ModuleHom) -> Result<Vec<Scalar>, BoundsError> {
        match &self.coords {
            None => Ok(Vec::new()),
            Some(b) => b
                .coords_vec(&flatten(h))
                .map_err(|_| BoundsError::Verification("map is not in the hom space".into())),
        }
    }

    pub fn element(&self, c: &[Scalar]) -> ModuleHom {
        combine(&self.basis, c, &self.basis.first().map(|h| h.source.clone()).unwrap_or_else(|| self.of.clone()), &self.of)
    }
}

impl EndoTransportPackage {
    /// The endomorphism of `P` behind an element of `Γ`.
    pub fn gamma_end(&self, x: &[Scalar]) -> ModuleHom {
        let raw = self.gamma_to_end.mul_vec(x);
        combine(&self.end_basis, &raw, &self.p, &self.p)
    }

    pub fn end_dim(&self) -> usize {
        self.end_basis.len()
    }

    /// `Hom_Λ(P, N)` with `Γ` acting by precomposition.
    pub fn hom_p(&self, n: &ModuleRep) -> Result<HomModule, BoundsError> {
        let g = &self.gamma;
        let f = g.field();
        let mut basis = Vec::new();
        let mut dims = Vec::new();
        for (k, &v) in self.summands.iter().enumerate() {
            let pk = &self.inclusions[k].source;
            let hs = hom_space(pk, n)?;
            debug_assert_eq!(hs.len(), n.dims()[v]);
            dims.push(hs.len());
            basis.extend(hs.iter().map(|h| h.compose(&self.projections[k])));
        }
        let len = flat_len(&self.p, n);
        let coords = if basis.is_empty() {
            None
        } else {
            Some(Basis::new(flat_mat(&basis, len, f)).map_err(ModuleError::from)?)
        };
        let mut offs = vec![0];
        for d in &dims {
            offs.push(offs.last().unwrap() + d);
        }
        let gend: Vec<ModuleHom> = (0..g.dim()).map(|b| self.gamma_end(&g.unit_vec(b))).collect();
        let mut blocks = Vec::with_capacity(g.dim());
        for b in 0..g.dim() {
            let (t, s) = g.peirce(b);
            let mut m = Mat::zeros(f, dims[t], dims[s]);
            for c in 0..dims[s] {
                let img = basis[offs[s] + c].compose(&gend[b]);
                let x = coords
                    .as_ref()
                    .unwrap()
                    .coords_vec(&flatten(&img))
                    .map_err(|_| BoundsError::Verification("precomposition leaves the hom space".into()))?;
                for r in 0..dims[t] {
                    m.set(r, c, x[offs[t] + r].clone());
                }
            }
            blocks.push(m);
        }
        let module = ModuleRep::from_blocks(g, dims, blocks)?;
        Ok(HomModule { module, of: n.clone(), basis, coords })
    }

    /// `Hom_Λ(P, f)`: postcomposition with `f`.
    pub fn hom_p_map(&self, f: &ModuleHom, src: &HomModule, tgt: &HomModule) -> Result<ModuleHom, BoundsError> {
        let fld = self.gamma.field();
        let mut m = Mat::zeros(fld, tgt.basis.len(), src.basis.len());
        for (j, phi) in src.basis.iter().enumerate() {
            let x = tgt.coords_of(&f.compose(phi))?;
            for (i, xi) in x.into_iter().enumerate() {
                m.set(i, j, xi);
            }
        }
        Ok(ModuleHom::from_matrix(src.module.clone(), tgt.module.clone(), &m)?)
    }

    /// The generator `e_v` of `Γe_v` inside a sum of `Γ`-projectives, as a coordinate vector.
    fn generator_in(&self, sum: &DirectSum, j: usize, v: usize) -> Vec<Scalar> {
        let g = &self.gamma;
        let local = projective_coords(g, v, &g.unit_vec(g.vertices()[v].idempotent));
        sum.inclusions[j].matrix().mul_vec(&local)
    }

    /// The element of `Γ` in summand `i` of a vector of a `Γ`-projective sum.
    fn component(&self, sum: &DirectSum, i: usize, v: usize, x: &[Scalar]) -> Vec<Scalar> {
        let local = sum.projections[i].matrix().mul_vec(x);
        projective_element(&self.gamma, v, &local)
    }

    /// `P ⊗_Γ −` on a map between sums of `Γ`-projectives.
    fn tensor_projective_map(
        &self,
        d: &ModuleHom,
        src: (&DirectSum, &[usize]),
        tgt: (&DirectSum, &[usize]),
        fsrc: &DirectSum,
        ftgt: &DirectSum,
    ) -> Result<ModuleHom, BoundsError> {
        let fld = self.lambda.field();
        let dm = d.matrix();
        let mut full = Mat::zeros(fld, ftgt.module.dim(), fsrc.module.dim());
        for (j, &a) in src.1.iter().enumerate() {
            let img = dm.mul_vec(&self.generator_in(src.0, j, a));
            for (i, &b) in tgt.1.iter().enumerate() {
                let z = self.component(tgt.0, i, b, &img);
                if z.iter().all(Scalar::is_zero) {
                    continue;
                }
                let block = self.projections[b].compose(&self.gamma_end(&z)).compose(&self.inclusions[a]);
                let piece = ftgt.inclusions[i].matrix().mul(&block.matrix()).mul(&fsrc.projections[j].matrix());
                full = full.add(&piece);
            }
        }
        Ok(ModuleHom::from_matrix(fsrc.module.clone(), ftgt.module.clone(), &full)?)
    }

    /// `P ⊗_Γ G` for a sum of `Γ`-projectives: the matching sum of `P(v_k)`.
    fn tensor_projective(&self, summands: &[usize]) -> Result<DirectSum, BoundsError> {
        let vs: Vec<usize> = summands.iter().map(|&k| self.summands[k]).collect();
        Ok(projective_sum(&self.lambda, &vs)?)
    }

    /// The unit `G → Hom_Λ(P, N)` through `q: P ⊗_Γ G → N`, for a sum `G` of `Γ`-projectives.
    fn unit_through(
        &self,
        g: (&DirectSum, &[usize]),
        fg: &DirectSum,
        q: &ModuleHom,
        hn: &HomModule,
        lift: &dyn Fn(usize) -> Vec<Scalar>,
        dim: usize,
    ) -> Result<Mat, BoundsError> {
        let fld = self.gamma.field();
        let mut m = Mat::zeros(fld, hn.basis.len(), dim);
        for c in 0..dim {
            let x = lift(c);
            let mut phi = ModuleHom::zero(&self.p, &fg.module);
            for (i, &b) in g.1.iter().enumerate() {
                let z = self.component(g.0, i, b, &x);
                if z.iter().all(Scalar::is_zero) {
                    continue;
                }
                let part = fg.inclusions[i].compose(&self.projections[b]).compose(&self.gamma_end(&z));
                phi = phi.add(&part);
            }
            let col = hn.coords_of(&q.compose(&phi))?;
            for (r, v) in col.into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        Ok(m)
    }
}

/// `P ⊗_Γ X` from a presentation `G_1 → G_0 → X → 0` by minimal covers.
#[derive(Clone, Debug)]
pub struct TensorModule {
    pub module: ModuleRep,
    /// `P ⊗_Γ G_0 → P ⊗_Γ X`.
    pub q: ModuleHom,
    pub g0_summands: Vec<usize>,
    pub g1_summands: Vec<usize>,
    g0: DirectSum,
    g1: DirectSum,
    f0: DirectSum,
    f1: DirectSum,
    /// `G_0 → X`.
    epi: ModuleHom,
    /// `G_1 → G_0`.
    d1: ModuleHom,
    /// `P ⊗ d1`.
    fd1: ModuleHom,
}

pub fn tensor_p(pkg: &EndoTransportPackage, x: &ModuleRep) -> Result<TensorModule, BoundsError> {
    let g = &pkg.gamma;
    let pc0 = projective_cover(x)?;
    let (k1, incl1) = pc0.kernel()?;
    let pc1 = projective_cover(&k1)?;
    let d1 = incl1.compose(&pc1.epi);
    let g0 = projective_sum(g, &pc0.summands)?;
    let g1 = projective_sum(g, &pc1.summands)?;
    let f0 = pkg.tensor_projective(&pc0.summands)?;
    let f1 = pkg.tensor_projective(&pc1.summands)?;
    let fd1 = pkg.tensor_projective_map(&d1, (&g1, &pc1.summands), (&g0, &pc0.summands), &f1, &f0)?;
    let (module, q) = f0.module.quotient(&fd1.image())?;
    Ok(TensorModule {
        module,
        q,
        g0_summands: pc0.summands.clone(),
        g1_summands: pc1.summands.clone(),
        g0,
        g1,
        f0,
        f1,
        epi: pc0.epi,
        d1,
        fd1,
    })
}

/// The unit `X → Hom_Λ(P, P ⊗_Γ X)`, `x ↦ (p ↦ p ⊗ x)`, built from a lift of each basis vector.
pub fn unit_map(pkg: &EndoTransportPackage, x: &ModuleRep, t: &TensorModule) -> Result<(HomModule, ModuleHom), BoundsError> {
    let hn = pkg.hom_p(&t.module)?;
    let em = t.epi.matrix();
    let lift = |c: usize| -> Vec<Scalar> {
        let mut e = vec![x.field().zero(); x.dim()];
        e[c] = x.field().one();
        em.solve(&Mat::column_vector(x.field(), e)).expect("cover is surjective").col(0)
    };
    let m = pkg.unit_through((&t.g0, &t.g0_summands), &t.f0, &t.q, &hn, &lift, x.dim())?;
    let u = ModuleHom::from_matrix(x.clone(), hn.module.clone(), &m)?;
    Ok((hn, u))
}

/// The evaluation `P ⊗_Γ Hom_Λ(P, M) → M`, `p ⊗ φ ↦ φ(p)`, for `t = tensor_p(hm.module)`.
pub fn evaluation_map(pkg: &EndoTransportPackage, hm: &HomModule, t: &TensorModule) -> Result<ModuleHom, BoundsError> {
    let m = &hm.of;
    let em = t.epi.matrix();
    let mut e = ModuleHom::zero(&t.f0.module, m);
    for (i, &b) in t.g0_summands.iter().enumerate() {
        let phi = hm.element(&em.mul_vec(&pkg.generator_in(&t.g0, i, b)));
        e = e.add(&phi.compose(&pkg.inclusions[b]).compose(&t.f0.projections[i]));
    }
    let q = t.q.matrix();
    let xt = q
        .transpose()
        .solve(&e.matrix().transpose())
        .map_err(|_| BoundsError::Verification("evaluation does not factor through the tensor product".into()))?;
    let x = xt.transpose();
    if x.mul(&q) != e.matrix() {
        return Err(BoundsError::Verification("evaluation does not vanish on the relations".into()));
    }
    Ok(ModuleHom::from_matrix(t.module.clone(), m.clone(), &x)?)
}

/// Data behind `Ω^j_Γ(X) ≅ Hom_Λ(P, Ω^j_Λ(P ⊗_Γ X) ⊕ Q)`.
#[derive(Clone, Debug)]
pub struct SyzygyComparison {
    pub j: usize,
    pub omega_gamma: ModuleRep,
    /// `L_j`, the kernel in the (possibly non-minimal) resolution obtained by tensoring.
    pub kernel: ModuleRep,
    pub hom_kernel: HomModule,
    /// `Ω^j_Γ(X) → Hom_Λ(P, L_j)`.
    pub sigma1: ModuleHom,
    /// Multiplicity of each `P(v)` in `Q`, per vertex of `Λ`.
    pub q: Vec<usize>,
    pub q_module: ModuleRep,
    pub omega_lambda: ModuleRep,
    /// `L_j → Ω^j_Λ(P ⊗ X) ⊕ Q`.
    pub splitting: ModuleHom,
    pub tensor: ModuleRep,
}

impl SyzygyComparison {
    pub fn verify(&self) -> bool {
        self.sigma1.is_intertwiner()
            && self.sigma1.is_iso()
            && self.splitting.is_intertwiner()
            && self.splitting.is_iso()
            && self.sigma1.source.same_as(&self.omega_gamma)
            && self.sigma1.target.same_as(&self.hom_kernel.module)
            && self.splitting.source.same_as(&self.kernel)
    }
}

fn multiplicities(nv: usize, vs: impl Iterator<Item = usize>) -> Vec<i64> {
    let mut c = vec![0i64; nv];
    for v in vs {
        c[v] += 1;
    }
    c
}

/// Rebuilds the comparison of `Γ`- and `Λ`-syzygies for `j ∈ {1, 2}` and checks it by ranks.
pub fn compare_syzygies(
    pkg: &EndoTransportPackage,
    x: &ModuleRep,
    j: usize,
    cfg: &SearchConfig,
) -> Result<SyzygyComparison, BoundsError> {
    if !(1..=2).contains(&j) {
        return Err(BoundsError::UnsupportedDegree(j));
    }
    let t = tensor_p(pkg, x)?;
    // Λ side: L_j inside P ⊗ G_{j-1}
    let (lj, lincl) = if j == 1 {
        t.f0.module.submodule(&t.q.kernel())?
    } else {
        t.f1.module.submodule(&t.fd1.kernel())?
    };
    // Γ side: Ω^j_Γ(X) inside G_{j-1}
    let (om1, incl1) = t.g0.module.submodule(&t.epi.kernel())?;
    let (omega_gamma, gincl) = if j == 1 {
        (om1, incl1)
    } else {
        t.g1.module.submodule(&t.d1.kernel())?
    };
    let (gj, gs, fj) = if j == 1 { (&t.g0, &t.g0_summands, &t.f0) } else { (&t.g1, &t.g1_summands, &t.f1) };
    let h_fj = pkg.hom_p(&fj.module)?;
    let id = ModuleHom::identity(&fj.module);
    let gm = gincl.matrix();
    let lift = |c: usize| gm.col(c);
    let sigma2_on_omega =
        pkg.unit_through((gj, gs), fj, &id, &h_fj, &lift, omega_gamma.dim())?;
    let hom_kernel = pkg.hom_p(&lj)?;
    let incl_star = pkg.hom_p_map(&lincl, &hom_kernel, &h_fj)?;
    let s = if hom_kernel.basis.is_empty() {
        if !sigma2_on_omega.is_zero() {
            return Err(BoundsError::ComparisonFailed("image misses Hom(P, L_j)".into()));
        }
        Mat::zeros(x.field(), 0, omega_gamma.dim())
    } else {
        incl_star
            .matrix()
            .solve(&sigma2_on_omega)
            .map_err(|_| BoundsError::ComparisonFailed("image of Ω_Γ(X) is not inside Hom(P, L_j)".into()))?
    };
    let sigma1 = ModuleHom::from_matrix(omega_gamma.clone(), hom_kernel.module.clone(), &s)?;
    if !sigma1.is_iso() {
        return Err(BoundsError::ComparisonFailed(format!("rank vector {:?}", sigma1.rank_vector())));
    }
    // Q from Schanuel's lemma against the minimal resolution of P ⊗ X
    let m = &t.module;
    let lam = &pkg.lambda;
    let nv = lam.num_vertices();
    let c0 = projective_cover(m)?;
    let fv = |ks: &[usize]| ks.iter().map(|&k| pkg.summands[k]).collect::<Vec<_>>();
    let q_signed: Vec<i64> = if j == 1 {
        let a = multiplicities(nv, fv(&t.g0_summands).into_iter());
        let b = multiplicities(nv, c0.summands.iter().copied());
        a.iter().zip(&b).map(|(x, y)| x - y).collect()
    } else {
        let c1 = projective_cover(&c0.kernel()?.0)?;
        let f1 = multiplicities(nv, fv(&t.g1_summands).into_iter());
        let f0 = multiplicities(nv, fv(&t.g0_summands).into_iter());
        let p0 = multiplicities(nv, c0.summands.iter().copied());
        let p1 = multiplicities(nv, c1.summands.iter().copied());
        (0..nv).map(|v| f1[v] + p0[v] - p1[v] - f0[v]).collect()
    };
    if q_signed.iter().any(|&c| c < 0) {
        return Err(BoundsError::ComparisonFailed(format!("negative projective multiplicities {q_signed:?}")));
    }
    let q: Vec<usize> = q_signed.iter().map(|&c| c as usize).collect();
    let q_vertices: Vec<usize> = (0..nv).flat_map(|v| std::iter::repeat_n(v, q[v])).collect();
    let q_module = projective_sum(lam, &q_vertices)?.module;
    let omega_lambda = syzygy(m, j)?;
    let target = DirectSum::of(lam, &[omega_lambda.clone(), q_module.clone()])?.module;
    let splitting = match find_isomorphism(&lj, &target, cfg)? {
        IsoResult::Isomorphic(h) => h,
        other => {
            return Err(BoundsError::ComparisonFailed(format!(
                "kernel is not Ω^{j} ⊕ Q: {}",
                if matches!(other, IsoResult::NonIsomorphic(_)) { "refuted" } else { "no isomorphism found" }
            )))
        }
    };
    Ok(SyzygyComparison {
        j,
        omega_gamma,
        kernel: lj,
        hom_kernel,
        sigma1,
        q,
        q_module,
        omega_lambda,
        splitting,
        tensor: m.clone(),
    })
}

/// Checks `HomImage` claims by recomputing `Hom_Λ(P, −)` and defers the rest.
pub struct TransportChecker<'a> {
    pub pkg: &'a EndoTransportPackage,
    pub inner: &'a dyn ClaimChecker,
    /// The witness module over `Λ`, for `SplitInto` claims.
    pub lambda_v: Option<&'a ModuleRep>,
}

impl ClaimChecker for TransportChecker<'_> {
    fn check(&self, module: &ModuleRep, claim: &Claim) -> Result<(), String> {
        match claim {
            Claim::HomImage { of, inner } => {
                let h = self.pkg.hom_p(of).map_err(|e| e.to_string())?;
                if !h.module.same_as(module) {
                    return Err("term differs from Hom(P, -) of its source".into());
                }
                check_structural(of, inner, self.lambda_v, self.inner)
            }
            other => self.inner.check(module, other),
        }
    }
}

/// Moves an `(m, j)`-IT witness from `Λ` to `Γ = End_Λ(P)^op`, `j ≤ 2`.
///
/// For each test `X` the `Λ`-chain for `Ω^j(P ⊗ X)` comes from `source`; its
/// last term is enlarged by `Q`, `Hom_Λ(P, −)` is applied, and the result is
/// re-verified as an exact chain ending at `Ω^j_Γ(X)`.
pub fn transport_witness(
    pkg: &EndoTransportPackage,
    m: usize,
    j: usize,
    source: &dyn Fn(&ModuleRep) -> Result<ExactChainCertificate, BoundsError>,
    tests: &[(String, ModuleRep)],
    cfg: &SearchConfig,
) -> Result<ITWitness, BoundsError> {
    if j > 2 {
        return Err(BoundsError::UnsupportedDegree(j));
    }
    let lam = &pkg.lambda;
    let mut certificates = Vec::new();
    for (name, x) in tests {
        let cert = transport_one(pkg, j, source, x, cfg)?;
        certificates.push((name.clone(), cert));
    }
    Ok(ITWitness {
        m,
        n: j,
        algebra: pkg.gamma.name().to_string(),
        v_description: format!("Hom_{}(P, V ⊕ {})", lam.name(), lam.name()),
        v: None,
        caveat: None,
        certificates,
    })
}

fn transport_one(
    pkg: &EndoTransportPackage,
    j: usize,
    source: &dyn Fn(&ModuleRep) -> Result<ExactChainCertificate, BoundsError>,
    x: &ModuleRep,
    cfg: &SearchConfig,
) -> Result<ExactChainCertificate, BoundsError> {
    let end_claim = Claim::Syzygy { n: j };
    if j == 0 {
        let t = tensor_p(pkg, x)?;
        let cert = source(&t.module)?;
        let (_, unit) = unit_map(pkg, x, &t)?;
        let back = unit.inverse()?;
        return apply_hom(pkg, &cert, None, Some(&back), x.clone(), end_claim);
    }
    let cmp = compare_syzygies(pkg, x, j, cfg)?;
    let cert = source(&cmp.tensor)?;
    let e = &cert.end;
    let to_omega = if e.same_as(&cmp.omega_lambda) {
        ModuleHom::identity(e)
    } else {
        match find_isomorphism(e, &cmp.omega_lambda, cfg)? {
            IsoResult::Isomorphic(h) => h,
            _ => return Err(BoundsError::Verification("certificate does not end at the syzygy".into())),
        }
    };
    let back = cmp.sigma1.inverse()?;
    apply_hom(pkg, &cert, Some((&cmp, &to_omega)), Some(&back), cmp.omega_gamma.clone(), end_claim)
}

/// Applies `Hom_Λ(P, −)` to a chain, optionally after adding `Q` to `V_0` and the end
/// and re-targeting the end through `L_j`, then composes the last map with `back`.
fn apply_hom(
    pkg: &EndoTransportPackage,
    cert: &ExactChainCertificate,
    extend: Option<(&SyzygyComparison, &ModuleHom)>,
    back: Option<&ModuleHom>,
    gamma_end: ModuleRep,
    end_claim: Claim,
) -> Result<ExactChainCertificate, BoundsError> {
    let lam = &pkg.lambda;
    let gname = pkg.gamma.name().to_string();
    if cert.terms.is_empty() {
        return Ok(ExactChainCertificate::empty(&gname, gamma_end, end_claim));
    }
    let mut mods: Vec<ModuleRep> = cert.terms.iter().map(|t| t.module.clone()).collect();
    let mut claims: Vec<Claim> = cert.terms.iter().map(|t| t.claim.clone()).collect();
    let mut maps = cert.maps.clone();
    let mut end = cert.end.clone();
    if let Some((cmp, to_omega)) = extend {
        let k = mods.len();
        let v0 = mods[k - 1].clone();
        let q = cmp.q_module.clone();
        let se = DirectSum::of(lam, &[cmp.omega_lambda.clone(), q.clone()])?;
        let split_inv = cmp.splitting.inverse()?;
        if q.is_zero() {
            maps[k - 1] = split_inv.compose(&se.inclusions[0]).compose(to_omega).compose(&maps[k - 1]);
        } else {
            let s0 = DirectSum::of(lam, &[v0.clone(), q.clone()])?;
            // V_1 → V_0 ⊕ Q
            if k >= 2 {
                maps[k - 2] = s0.inclusions[0].compose(&maps[k - 2]);
            }
            // V_0 ⊕ Q → Ω ⊕ Q → L_j
            let last = se.inclusions[0]
                .compose(to_omega)
                .compose(&maps[k - 1])
                .compose(&s0.projections[0])
                .add(&se.inclusions[1].compose(&s0.projections[1]));
            maps[k - 1] = split_inv.compose(&last);
            let qclaim = Claim::ProjectiveOver {
                level: 0,
                algebra: lam.name().to_string(),
                summands: (0..lam.num_vertices()).flat_map(|v| std::iter::repeat_n(v, cmp.q[v])).collect(),
            };
            claims[k - 1] = Claim::SumOf(vec![(v0, claims[k - 1].clone()), (q, qclaim)]);
            mods[k - 1] = s0.module;
        }
        end = cmp.kernel.clone();
    }
    let homs = mods.iter().map(|m| pkg.hom_p(m)).collect::<Result<Vec<_>, _>>()?;
    let hend = pkg.hom_p(&end)?;
    let mut gmaps = Vec::new();
    for (i, f) in maps.iter().enumerate() {
        let tgt = if i + 1 < homs.len() { &homs[i + 1] } else { &hend };
        gmaps.push(pkg.hom_p_map(f, &homs[i], tgt)?);
    }
    let mut gend_mod = hend.module.clone();
    if let Some(b) = back {
        let last = gmaps.pop().unwrap();
        // `back` runs from Hom(P, end) (or the identified module) to the Γ-side end
        let lastc = if b.source.same_as(&last.target) {
            b.compose(&last)
        } else {
            return Err(BoundsError::Verification("comparison map does not match the chain end".into()));
        };
        gend_mod = b.target.clone();
        gmaps.push(lastc);
    }
    let terms = homs
        .iter()
        .zip(mods.iter().zip(claims))
        .map(|(h, (m, c))| ChainTerm {
            module: h.module.clone(),
            claim: Claim::HomImage { of: m.clone(), inner: Box::new(c) },
            verified: None,
        })
        .collect();
    debug_assert!(gend_mod.same_as(&gamma_end));
    Ok(ExactChainCertificate { algebra: gname, terms, end: gend_mod, end_claim, maps: gmaps })
}
