use clap::{Args, ValueEnum};
use xop::ratpoly::parse_rat;
use xop::{Family, JacobiParams, Rat, X1JacobiParams, X1LaguerreParams, XmParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    ClassicalJacobi,
    X1Jacobi,
    X1Laguerre,
    XmJacobi,
}

/// Family parameters, parsed exactly: `5/4`, `-1/2`, `0.25`.
#[derive(Args, Clone, Debug, Default)]
pub struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
}

fn rat_arg(name: &str, v: &Option<String>) -> Result<Rat, String> {
    let s = v.as_deref().ok_or_else(|| format!("--{name} is required for this family"))?;
    parse_rat(s).map_err(|_| format!("--{name}: cannot parse {s:?} as a rational"))
}

impl ParamArgs {
    /// Family implied by which parameters were given.
    pub fn infer(&self) -> Option<FamilyKind> {
        if self.m.is_some() {
            Some(FamilyKind::XmJacobi)
        } else if self.k.is_some() {
            Some(FamilyKind::X1Laguerre)
        } else if self.alpha.is_some() || self.beta.is_some() {
            Some(FamilyKind::ClassicalJacobi)
        } else {
            None
        }
    }

    pub fn family(&self, kind: FamilyKind) -> Result<Family, String> {
        let ab = || Ok::<_, String>((rat_arg("alpha", &self.alpha)?, rat_arg("beta", &self.beta)?));
        Ok(match kind {
            FamilyKind::ClassicalJacobi => {
                let (a, b) = ab()?;
                Family::ClassicalJacobi(JacobiParams::new(a, b))
            }
            FamilyKind::X1Jacobi => {
                let (a, b) = ab()?;
                Family::X1Jacobi(X1JacobiParams::new(a, b).map_err(|e| e.to_string())?)
            }
            FamilyKind::X1Laguerre => {
                Family::X1Laguerre(X1LaguerreParams::new(rat_arg("k", &self.k)?).map_err(|e| e.to_string())?)
            }
            FamilyKind::XmJacobi => {
                let (a, b) = ab()?;
                let m = self.m.ok_or("--m is required for this family")?;
                Family::XmJacobi(XmParams::new(a, b, m))
            }
        })
    }
}

/// `a..b` (inclusive) or a single `n`.
pub fn parse_index_range(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("cannot parse {s:?} as a degree range a..b");
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok((a, b))
        }
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            Ok((n, n))
        }
    }
}

/// `lo..hi` with rational or decimal endpoints.
pub fn parse_x_range(s: &str) -> Result<(Rat, Rat), String> {
    let bad = || format!("cannot parse {s:?} as an x range lo..hi");
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let (a, b) = (parse_rat(a).map_err(|_| bad())?, parse_rat(b).map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use xop::ratpoly::rat;

    #[test]
    fn ranges() {
        assert_eq!(parse_index_range("2..6").unwrap(), (2, 6));
        assert_eq!(parse_index_range("3").unwrap(), (3, 3));
        assert!(parse_index_range("6..2").is_err());
        assert_eq!(parse_x_range("-1/2..0.75").unwrap(), (rat(-1, 2), rat(3, 4)));
        assert!(parse_x_range("1").is_err());
    }

    #[test]
    fn inference() {
        let p = ParamArgs { alpha: Some("5/4".into()), beta: Some("1/2".into()), m: Some(2), k: None };
        assert_eq!(p.infer(), Some(FamilyKind::XmJacobi));
        assert!(p.family(FamilyKind::X1Laguerre).is_err());
        assert!(ParamArgs::default().infer().is_none());
    }
}
