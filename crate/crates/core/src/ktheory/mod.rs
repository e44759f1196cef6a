//! Homotopy algebraic K-theory of algebras over `F_p`: Quillen's groups,
//! graph algebras through the incidence matrix, Cuntz algebras, Laurent
//! polynomials and the rotation algebras `A_λ = C_λ ⊕ F_p[t, t⁻¹]`.

mod abelian;
mod graph;
mod smith;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::is_prime;

pub use abelian::{ExtensionData, FinGenAbGroup};
pub use graph::{graph_incidence, Edge, Graph};
pub use smith::{smith_normal_form, IntMatrix, SmithForm};

use abelian::gcd;

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn checked_pow(p: u64, i: u32) -> Result<u64> {
    p.checked_pow(i).ok_or(Error::Overflow("p^i"))
}

/// `K_m(F_p)`: `Z` for `m = 0`, `Z/(p^i − 1)` for `m = 2i − 1`, else `0`.
pub fn quillen_k(m: i64, p: u64) -> Result<FinGenAbGroup> {
    require_prime(p)?;
    Ok(match m {
        0 => FinGenAbGroup::integers(),
        m if m > 0 && m % 2 == 1 => {
            let i = u32::try_from((m + 1) / 2).map_err(|_| Error::Overflow("degree"))?;
            FinGenAbGroup::cyclic(checked_pow(p, i)? - 1)
        }
        _ => FinGenAbGroup::trivial(),
    })
}

/// Kernel and cokernel of an induced map `G^cols → G^rows`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelCokernel {
    pub kernel: FinGenAbGroup,
    pub cokernel: FinGenAbGroup,
}

/// The map `(Z/d)^cols → (Z/d)^rows` induced by `n`, with `d = 0` meaning `Z`.
pub fn map_on_cyclic(n: &IntMatrix, d: u64) -> Result<KernelCokernel> {
    let snf = smith_normal_form(n)?;
    let diag: Vec<u64> = snf
        .diagonal()
        .into_iter()
        .filter(|&x| x != 0)
        .map(|x| u64::try_from(x).map_err(|_| Error::Overflow("invariant factor")))
        .collect::<Result<_>>()?;
    let rank = diag.len();
    let (extra_cols, extra_rows) = (n.cols() - rank, n.rows() - rank);
    if d == 0 {
        return Ok(KernelCokernel {
            kernel: FinGenAbGroup::new(extra_cols, &[])?,
            cokernel: FinGenAbGroup::new(extra_rows, &diag)?,
        });
    }
    // multiplication by d_i on Z/d has kernel and cokernel Z/gcd(d_i, d)
    let shared: Vec<u64> = diag.iter().map(|&x| gcd(x % d, d)).collect();
    let with = |extra: usize| -> Vec<u64> { shared.iter().copied().chain(std::iter::repeat_n(d, extra)).collect() };
    Ok(KernelCokernel {
        kernel: FinGenAbGroup::new(0, &with(extra_cols))?,
        cokernel: FinGenAbGroup::new(0, &with(extra_rows))?,
    })
}

/// Cokernel of `Z^cols → Z^rows`.
pub fn cokernel(n: &IntMatrix) -> Result<FinGenAbGroup> {
    Ok(map_on_cyclic(n, 0)?.cokernel)
}

/// The map on `K_m(F_p)` induced by an integer matrix.
pub fn map_on_k(n: &IntMatrix, m: i64, p: u64) -> Result<KernelCokernel> {
    let g = quillen_k(m, p)?;
    match g.cyclic_order() {
        Some(1) => Ok(KernelCokernel { kernel: FinGenAbGroup::trivial(), cokernel: FinGenAbGroup::trivial() }),
        Some(d) => map_on_cyclic(n, d),
        None => map_on_cyclic(n, 0),
    }
}

/// One degree of a K-theory computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KhReport {
    pub degree: i64,
    /// The group, when it is determined.
    pub group: Option<FinGenAbGroup>,
    pub extension: Option<ExtensionData>,
    pub notes: Vec<String>,
}

impl KhReport {
    fn group(degree: i64, group: FinGenAbGroup) -> Self {
        KhReport { degree, group: Some(group), extension: None, notes: vec![] }
    }

    fn extension(degree: i64, ext: ExtensionData) -> Self {
        KhReport { degree, group: ext.resolved.clone(), extension: Some(ext), notes: vec![] }
    }

    /// Group as text, or the extension pieces if it is not determined.
    pub fn describe(&self) -> String {
        match (&self.group, &self.extension) {
            (Some(g), _) => g.to_string(),
            (None, Some(e)) => format!("extension of {} by {}", e.quot, e.sub),
            (None, None) => "unknown".into(),
        }
    }
}

/// `KH_m(L_{F_p}(E))` from `0 → coker(N_E on K_m) → KH_m → ker(N_E on K_{m−1}) → 0`.
pub fn graph_kh(graph: &Graph, p: u64, m: i64) -> Result<KhReport> {
    let n = graph_incidence(graph);
    let sub = map_on_k(&n, m, p)?.cokernel;
    let quot = map_on_k(&n, m - 1, p)?.kernel;
    let mut report = KhReport::extension(m, ExtensionData::new(sub, quot));
    if report.group.is_none() {
        report.notes.push("extension not determined by its pieces".into());
    }
    Ok(report)
}

/// `KH_m` of the Leavitt algebra of `E_n`: `Z/gcd(p^i − 1, n − 1)` with
/// `i = ⌈m/2⌉` for `m > 0`, `Z/(n − 1)` for `m = 0`.
pub fn cuntz_kh(n: u64, p: u64, m: i64) -> Result<FinGenAbGroup> {
    require_prime(p)?;
    if n < 2 {
        return Err(Error::InvalidInput("Cuntz algebras need n >= 2".into()));
    }
    Ok(match m {
        m if m < 0 => FinGenAbGroup::trivial(),
        0 => FinGenAbGroup::cyclic(n - 1),
        m => {
            let i = u32::try_from((m + 1) / 2).map_err(|_| Error::Overflow("degree"))?;
            FinGenAbGroup::cyclic(gcd(checked_pow(p, i)? - 1, n - 1))
        }
    })
}

/// `KH_m(F_p[t, t⁻¹])` as tabulated: `0`, `Z`, `Z ⊕ Z/(p−1)`, then `Z/(p−1)`.
pub fn laurent_kh(p: u64, m: i64) -> Result<FinGenAbGroup> {
    require_prime(p)?;
    Ok(match m {
        m if m < 0 => FinGenAbGroup::trivial(),
        0 => FinGenAbGroup::integers(),
        1 => FinGenAbGroup::new(1, &[p - 1])?,
        _ => FinGenAbGroup::cyclic(p - 1),
    })
}

/// Order of `λ` in `F_p^×`.
pub fn multiplicative_order(lambda: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    let lambda = lambda % p;
    if lambda == 0 {
        return Err(Error::NotAUnit);
    }
    let mut x = lambda;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * lambda as u128) % p as u128) as u64;
        k += 1;
    }
    Ok(k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationKh {
    pub degree: i64,
    /// `k = ord(λ)`.
    pub order: u64,
    pub c_lambda: KhReport,
    pub a_lambda: KhReport,
    /// `dim_Q KH_n(A_λ) ⊗ Q`.
    pub rational_dimension: usize,
}

/// `KH_n(C_λ)` and `KH_n(A_λ) = KH_n(C_λ) ⊕ KH_n(F_p[t, t⁻¹])`.
pub fn rotation_kh(lambda: u64, p: u64, n: i64) -> Result<RotationKh> {
    let k = multiplicative_order(lambda, p)?;
    let c_lambda = match n {
        n if n < 0 => KhReport::group(n, FinGenAbGroup::trivial()),
        0 => KhReport::group(n, FinGenAbGroup::integers()),
        // F_p^× / <λ⁻¹> is cyclic of order (p − 1)/k
        1 => KhReport::group(n, FinGenAbGroup::cyclic((p - 1) / k)),
        2 => {
            let mut r = KhReport::group(n, FinGenAbGroup::integers());
            r.notes.push(format!("kZ with k = ord(lambda) = {}", k));
            r
        }
        n if n % 2 == 0 => KhReport::group(n, FinGenAbGroup::trivial()),
        n => {
            let ext = ExtensionData::new(quillen_k(n, p)?, quillen_k(n - 2, p)?);
            let mut r = KhReport::extension(n, ext);
            if r.group.is_none() {
                r.notes.push("the map lambda^* on K_*(F_p) is not known here; extension left open".into());
            }
            r
        }
    };
    let laurent = laurent_kh(p, n)?;
    let mut a_lambda = match &c_lambda.group {
        Some(g) => KhReport::group(n, g.direct_sum(&laurent)?),
        None => {
            let mut r = KhReport { degree: n, group: None, extension: c_lambda.extension.clone(), notes: vec![] };
            r.notes.push(format!("direct sum of this extension with {}", laurent));
            r
        }
    };
    if n >= 3 {
        let fundamental = quillen_k(n, p)?.direct_sum(&quillen_k(n - 1, p)?)?;
        if fundamental != laurent {
            a_lambda
                .notes
                .push(format!("Laurent summand taken as {}; K_n + K_(n-1) of F_p gives {}", laurent, fundamental));
        }
    }
    let rational_dimension = match n {
        0 => 2,
        1 | 2 => 1,
        _ => 0,
    };
    Ok(RotationKh { degree: n, order: k, c_lambda, a_lambda, rational_dimension })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(d: u64) -> FinGenAbGroup {
        FinGenAbGroup::cyclic(d)
    }

    #[test]
    fn quillen_examples() {
        assert_eq!(quillen_k(1, 3).unwrap(), z(2));
        assert_eq!(quillen_k(3, 2).unwrap(), z(3));
        assert_eq!(quillen_k(-1, 7).unwrap(), FinGenAbGroup::trivial());
        assert_eq!(quillen_k(0, 7).unwrap(), FinGenAbGroup::integers());
        assert_eq!(quillen_k(4, 7).unwrap(), FinGenAbGroup::trivial());
        assert_eq!(quillen_k(1, 4).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn map_on_k_examples() {
        for n in 2..6i128 {
            let m = IntMatrix::from_rows(&[vec![1 - n]]).unwrap();
            let kc = map_on_k(&m, 0, 5).unwrap();
            assert!(kc.kernel.is_trivial());
            assert_eq!(kc.cokernel, z((n - 1) as u64));
        }
        let id = IntMatrix::identity(3);
        let kc = map_on_k(&id, 0, 3).unwrap();
        assert!(kc.kernel.is_trivial() && kc.cokernel.is_trivial());
        let two = IntMatrix::from_rows(&[vec![2]]).unwrap();
        let kc = map_on_cyclic(&two, 6).unwrap();
        assert_eq!((kc.kernel, kc.cokernel), (z(2), z(2)));
    }

    #[test]
    fn graph_examples() {
        let sink = Graph::new(vec![crate::hilbert::Label::from("v")], vec![]).unwrap();
        for m in -2..6 {
            assert_eq!(graph_kh(&sink, 3, m).unwrap().group, Some(quillen_k(m, 3).unwrap()));
        }
        assert_eq!(graph_kh(&Graph::rose(3), 2, 0).unwrap().group, Some(z(2)));
        for m in 0..6 {
            assert_eq!(graph_kh(&Graph::rose(2), 5, m).unwrap().group, Some(FinGenAbGroup::trivial()));
        }
    }

    #[test]
    fn cuntz_examples() {
        for m in 0..8 {
            assert_eq!(cuntz_kh(3, 5, m).unwrap(), z(2));
            assert_eq!(cuntz_kh(2, 7, m).unwrap(), FinGenAbGroup::trivial());
        }
        assert_eq!(cuntz_kh(3, 2, 2).unwrap(), FinGenAbGroup::trivial());
        assert_eq!(cuntz_kh(3, 2, -1).unwrap(), FinGenAbGroup::trivial());
    }

    #[test]
    fn laurent_examples() {
        assert_eq!(laurent_kh(3, 1).unwrap(), FinGenAbGroup::new(1, &[2]).unwrap());
        assert_eq!(laurent_kh(3, 4).unwrap(), z(2));
        assert_eq!(laurent_kh(2, 1).unwrap(), FinGenAbGroup::integers());
        assert_eq!(laurent_kh(2, 3).unwrap(), FinGenAbGroup::trivial());
    }

    #[test]
    fn rotation_examples() {
        let r = rotation_kh(2, 5, 1).unwrap();
        assert_eq!(r.order, 4);
        assert_eq!(r.c_lambda.group, Some(FinGenAbGroup::trivial()));
        assert_eq!(r.a_lambda.group, Some(FinGenAbGroup::new(1, &[4]).unwrap()));
        assert_eq!(rotation_kh(4, 5, 1).unwrap().c_lambda.group, Some(z(2)));
        assert_eq!(rotation_kh(2, 5, 0).unwrap().rational_dimension, 2);
        assert_eq!(rotation_kh(2, 5, 1).unwrap().rational_dimension, 1);
        let odd = rotation_kh(2, 5, 3).unwrap();
        assert_eq!(odd.c_lambda.group, None);
        assert_eq!(odd.c_lambda.extension.unwrap().sub, z(24));
        assert_eq!(rotation_kh(5, 5, 1).unwrap_err(), Error::NotAUnit);
    }
}
