//! Brute-force phase monotonicity along every arrow of the vector-bundle mesh.

use crate::charge::{cmp_values, PhaseOrd, Scaled, ScaledPoint, Tsd};
use crate::error::{Error, Result};
use crate::model::Lattice;
use crate::num::{fmt_q, Int, Q};
use crate::region::{check_membership, MembershipReport, Violation};
use crate::with_scaled;
use num_bigint::BigInt;

/// One arrow of the mesh: `from → to`, tagged with its base shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct MeshArrow {
    from: (i64, usize),
    to: (i64, usize),
    base: i64,
    mesh: bool,
}

fn arrows_in(lat: &Lattice, k_lo: i64, k_hi: i64) -> Vec<MeshArrow> {
    let mut out = Vec::new();
    for k in k_lo..=k_hi {
        for &(u, v) in &lat.section.arrows {
            out.push(MeshArrow { from: (k, u), to: (k, v), base: k, mesh: false });
            if k < k_hi {
                out.push(MeshArrow { from: (k + 1, v), to: (k, u), base: k, mesh: true });
            }
        }
    }
    out
}

fn arrow_id(lat: &Lattice, a: &MeshArrow) -> String {
    let name = |u: usize| lat.section.label(u);
    if a.mesh {
        format!("tau.{}->{}@{}", name(a.from.1), name(a.to.1), a.base)
    } else {
        format!("{}->{}@{}", name(a.from.1), name(a.to.1), a.base)
    }
}

/// Shift range scanned for `periods` periods. On the real line phases are sign based, so the
/// range is widened to cover every sign change; outside it no arrow can fail.
fn window<T: Int>(p: &ScaledPoint<T>, lat: &Lattice, periods: u32) -> [i64; 2] {
    let top = lat.period() * periods as i64;
    if p.is_real() {
        let (lo, hi) = p.sign_transitions(&lat.charges);
        [0.min(lo - 1), top.max(hi + 1)]
    } else {
        [0, top]
    }
}

fn fmt_charge<T: Int>(p: &ScaledPoint<T>, lat: &Lattice, (re, im): (T, T)) -> String {
    let den = p.den.to_big() * BigInt::from(lat.charges.scale);
    let part = |x: T| fmt_q(&Q::new(x.to_big(), den.clone()));
    format!("({}, {})", part(re), part(im))
}

/// Condition★ over `periods` periods of the mesh. Degenerate data are reported as
/// non-members without evaluating any arrow.
pub fn condition_star(tsd: &Tsd, periods: u32) -> Result<MembershipReport> {
    if periods == 0 {
        return Err(Error::InvalidDatum("periods must be at least 1".into()));
    }
    let lat = Lattice::cached(tsd.weights())?;
    let sp = Scaled::from_tsd(tsd, lat.charges.small_ok());
    let table = &lat.charges;
    with_scaled!(&sp, p => {
        if let Some((k, u)) = p.degenerate_vertex(table) {
            let at = format!("{}@{k}", lat.section.label(u));
            return Ok(MembershipReport::new(false, Some(at), Vec::new()));
        }
        let [k_lo, k_hi] = window(p, &lat, periods);
        let mut violations = Vec::new();
        for a in arrows_in(&lat, k_lo, k_hi) {
            let x = p.charge(table, a.from.0, a.from.1);
            let y = p.charge(table, a.to.0, a.to.1);
            if cmp_values((&x.0, &x.1), (&y.0, &y.1))? == PhaseOrd::Gt {
                violations.push((a.base, Violation {
                    id: arrow_id(&lat, &a),
                    indices: Default::default(),
                    lhs: fmt_charge(p, &lat, x),
                    rhs: fmt_charge(p, &lat, y),
                }));
            }
        }
        violations.sort_by(|(ka, a), (kb, b)| ka.cmp(kb).then_with(|| a.id.cmp(&b.id)));
        let mut report = MembershipReport::new(true, None, violations.into_iter().map(|(_, v)| v).collect());
        report.window = Some([k_lo, k_hi]);
        Ok(report)
    })
}

/// Closed form and one-period Condition★ agree on the datum.
pub fn cross_check(tsd: &Tsd) -> Result<bool> {
    Ok(condition_star(tsd, 1)?.member == check_membership(tsd)?.member)
}
