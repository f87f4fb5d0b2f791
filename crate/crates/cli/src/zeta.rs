use num_complex::Complex64 as C64;
use sbdo_core::zeta::{
    fe_check, fe_matrix, fs_derived_matrix, CaseId, FECase, FEMatrix, HermiteFunction, ZetaError,
    ZetaSpace,
};
use serde::Serialize;

use crate::report::SCHEMA_VERSION;

/// Parses `0.3`, `-2i`, `0.3+0.1i`, `1e-2-0.5i`.
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse complex number '{s}'");
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|x| C64::new(x, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not an exponent sign or the leading sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.trim_start_matches('+').parse().map_err(|_| bad())?;
    Ok(C64::new(re, im))
}

/// `h0,h2` → Hermite orders `[0, 2]`.
pub fn parse_orders(f: &str) -> Result<Vec<u32>, String> {
    f.split(',')
        .map(|h| {
            h.trim()
                .strip_prefix('h')
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| format!("test function factor '{h}' is not of the form hK"))
        })
        .collect()
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Serialize)]
pub struct CheckReport {
    schema: u32,
    case: String,
    s: [f64; 2],
    f: Vec<u32>,
    lhs: [[f64; 2]; 2],
    rhs: [[f64; 2]; 2],
    residual: f64,
    tol: f64,
    ladder_depth: usize,
    pass: bool,
}

pub fn check(case: &str, s: C64, orders: Vec<u32>, tol: f64) -> Result<CheckReport, ZetaError> {
    let space = ZetaSpace::parse(case)?;
    if orders.len() != space.n {
        return Err(ZetaError::Dimension { got: orders.len(), expect: space.n });
    }
    let r = fe_check(&space, &HermiteFunction::new(orders.clone(), space.kernel), s)?;
    Ok(CheckReport {
        schema: SCHEMA_VERSION,
        case: space.name.clone(),
        s: pair(s),
        f: orders,
        lhs: r.lhs.map(pair),
        rhs: r.rhs.map(pair),
        residual: r.residual,
        tol,
        ladder_depth: r.ladder_depth,
        pass: r.residual <= tol,
    })
}

impl CheckReport {
    pub fn pass(&self) -> bool {
        self.pass
    }
}

#[derive(Serialize)]
struct MatrixJson {
    prefactor: [f64; 2],
    matrix: [[[f64; 2]; 2]; 2],
    full: [[[f64; 2]; 2]; 2],
    basis: String,
}

impl From<&FEMatrix> for MatrixJson {
    fn from(m: &FEMatrix) -> Self {
        let full = m.full();
        MatrixJson {
            prefactor: pair(m.prefactor),
            matrix: m.matrix.map(|row| row.map(pair)),
            full: full.map(|row| row.map(pair)),
            basis: format!("{:?}", m.basis),
        }
    }
}

#[derive(Serialize)]
pub struct MatricesReport {
    schema: u32,
    case: String,
    n: usize,
    r: usize,
    d: usize,
    s: [f64; 2],
    closed_form: MatrixJson,
    /// Distance to the matrix assembled from the column and alternating sums.
    fs_distance: Option<f64>,
    fs_span_residual: Option<f64>,
}

pub struct MatrixArgs {
    pub case: String,
    pub r: Option<usize>,
    pub d: Option<usize>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub n: Option<usize>,
    pub r_plus: Option<usize>,
}

fn need(v: Option<usize>, flag: &str, case: &str) -> Result<usize, ZetaError> {
    v.ok_or_else(|| ZetaError::Unsupported(format!("case {case} needs --{flag}")))
}

pub fn matrices(a: &MatrixArgs, s: C64) -> Result<MatricesReport, ZetaError> {
    let (id, case) = match a.case.strip_prefix("Rpq:") {
        Some(rest) => {
            let mut it = rest.split(',').map(|x| x.trim().parse::<usize>());
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(p)), Some(Ok(q)), None) => (CaseId::Rpq, FECase::rpq(p, q)),
                _ => return Err(ZetaError::UnknownCase(a.case.clone())),
            }
        }
        None => {
            let id = CaseId::parse(&a.case)?;
            let case = match id {
                CaseId::Rpq => FECase::rpq(need(a.p, "p", &a.case)?, need(a.q, "q", &a.case)?),
                CaseId::TypeIIScalar | CaseId::TypeIIIIVScalar => FECase::scalar(
                    id,
                    need(a.n, "n", &a.case)?,
                    need(a.r, "r", &a.case)?,
                    need(a.d, "d", &a.case)?,
                    need(a.r_plus, "r-plus", &a.case)?,
                )?,
                _ => FECase::euclidean(id, need(a.r, "r", &a.case)?, need(a.d, "d", &a.case)?)?,
            };
            (id, case)
        }
    };
    let closed = fe_matrix(&case, s)?;
    let (dist, span) = if CaseId::EUCLIDEAN.contains(&id) {
        let (derived, span) = fs_derived_matrix(&case, s)?;
        (Some(derived.relative_distance(&closed)), Some(span))
    } else {
        (None, None)
    };
    Ok(MatricesReport {
        schema: SCHEMA_VERSION,
        case: id.name().to_string(),
        n: case.n,
        r: case.r,
        d: case.d,
        s: pair(s),
        closed_form: (&closed).into(),
        fs_distance: dist,
        fs_span_residual: span,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0.4").unwrap(), C64::new(0.4, 0.0));
        assert_eq!(parse_complex("0.3+0.1i").unwrap(), C64::new(0.3, 0.1));
        assert_eq!(parse_complex("-1e-1-2i").unwrap(), C64::new(-0.1, -2.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert_eq!(parse_complex("2.5i").unwrap(), C64::new(0.0, 2.5));
        assert!(parse_complex("x+1i").is_err());
    }

    #[test]
    fn hermite_orders() {
        assert_eq!(parse_orders("h0,h2").unwrap(), vec![0, 2]);
        assert!(parse_orders("h0,g1").is_err());
    }
}
