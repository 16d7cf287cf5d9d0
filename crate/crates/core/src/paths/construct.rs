use num_integer::Integer;

use super::{
    find_channels, AllowableCertificate, AllowablePaths, Arc, DiagramPath, PathError, PathSummary,
};
use crate::diagram::{build_diagram, Diagram};
use crate::farey::{Expansion, Fraction};

/// The constructive allowable path for a knot diagram built from its all-even
/// expansion.
///
/// With a negative term the path runs along the bottom, crosses to the top
/// through one channel and finishes along the top. With all terms positive
/// and one of them at least 4 it stays on the bottom and uses a channel with
/// both ends there. Among the candidates of the relevant shape the one with
/// the largest corner is returned.
pub fn constructive_path(d: &Diagram) -> Result<AllowableCertificate, PathError> {
    let e = d.expansion();
    if !e.is_all_even() {
        return Err(PathError::NotEvenExpansion(e.clone()));
    }
    let f = d.fraction();
    if e.terms().iter().all(|&a| a == 2) {
        return Err(PathError::AllTwosExpansion(f));
    }
    let (p, q) = (f.num(), f.den());
    if f.is_infinite() || p.is_odd() || q.is_even() || p <= 1 || p >= q - 1 {
        return Err(PathError::NotCanonical(f));
    }

    let bottom = d.bottom_path();
    let top = d.top_path();
    let cross = e.terms().iter().any(|&a| a < 0);
    let index = |path: &[usize], v: usize| path.iter().position(|&x| x == v);

    let mut best: Option<AllowableCertificate> = None;
    for ch in find_channels(d) {
        for (s, t) in [
            (ch.endpoint_a, ch.endpoint_b),
            (ch.endpoint_b, ch.endpoint_a),
        ] {
            let Some(i) = index(bottom, s) else { continue };
            let suffix = if cross {
                match index(top, t) {
                    Some(j) => &top[j..],
                    None => continue,
                }
            } else {
                match index(bottom, t) {
                    Some(j) if j > i => &bottom[j..],
                    _ => continue,
                }
            };
            let mut arcs: Vec<Arc> = bottom[..=i]
                .windows(2)
                .map(|w| Arc::Edge {
                    from: w[0],
                    to: w[1],
                })
                .collect();
            arcs.push(Arc::Channel {
                channel: ch,
                from: s,
                to: t,
            });
            arcs.extend(suffix.windows(2).map(|w| Arc::Edge {
                from: w[0],
                to: w[1],
            }));
            let Ok(path) = DiagramPath::new(d, arcs) else {
                continue;
            };
            let Ok(cert) = AllowableCertificate::new(path) else {
                continue;
            };
            if best.as_ref().is_none_or(|b| cert.max_corner > b.max_corner) {
                best = Some(cert);
            }
        }
    }
    best.ok_or(PathError::NoConstructivePath(f))
}

/// A two-channel allowable path in the diagram of the twisted Whitehead link
/// `[2, r, -2]`.
#[derive(Clone, Debug)]
pub struct WhiteheadPath {
    /// The requested twist parameter.
    pub r: i64,
    /// Set when `r > 0` and the mirror `-r` was used.
    pub mirrored: bool,
    /// Expansion actually drawn: `[2, r, -2]`, or `[2, r+1, 2]` for odd `r`.
    pub expansion: Expansion,
    pub link: Fraction,
    pub diagram: Diagram,
    pub certificate: AllowableCertificate,
}

impl WhiteheadPath {
    pub fn summary(&self) -> PathSummary {
        self.certificate.summary(&self.diagram)
    }
}

pub fn whitehead_two_channel_path(r: i64) -> Result<WhiteheadPath, PathError> {
    if r.abs() <= 2 {
        return Err(PathError::TooFewTwists(r));
    }
    let (s, mirrored) = if r > 0 { (-r, true) } else { (r, false) };
    let terms = if s.is_even() {
        vec![2, s, -2]
    } else {
        vec![2, s + 1, 2]
    };
    let expansion = Expansion::new(terms).expect("nonzero terms");
    let diagram = build_diagram(&expansion)?;
    let certificate = AllowablePaths::new(&diagram, None)
        .filter_map(Result::ok)
        .find(|c| c.channel_count == 2)
        .ok_or(PathError::NoTwoChannelPath(r))?;
    Ok(WhiteheadPath {
        r,
        mirrored,
        link: diagram.fraction(),
        expansion,
        diagram,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::even_expansion;

    fn knot(s: &str) -> Diagram {
        build_diagram(&even_expansion(s.parse::<Fraction>().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn generic_example() {
        let d = knot("16/41");
        let c = constructive_path(&d).unwrap();
        assert!(c.max_corner >= 3);
        assert!(c.channel_count == 1 && c.min_corner >= 2);
        let (v, cv) = c.witness.unwrap();
        assert_eq!(cv, c.max_corner);
        assert!(c.path.corners().contains(&(v, cv)));
    }

    #[test]
    fn positive_expansion_stays_on_the_bottom() {
        let d = knot("4/15");
        assert_eq!(d.expansion().terms(), [4, 4]);
        let c = constructive_path(&d).unwrap();
        assert!(c.path.vertices().iter().all(|&v| d.vertex(v).on_bottom));
        // two-term with both entries even: the path exists but is not an obstruction
        assert_eq!(c.max_corner, 2);
    }

    #[test]
    fn mixed_sign_crosses_to_the_top() {
        let d = knot("4/11");
        let c = constructive_path(&d).unwrap();
        let labels: Vec<String> = c
            .path
            .vertices()
            .iter()
            .map(|&v| d.label(v).to_string())
            .collect();
        assert_eq!(labels, ["inf", "1/1", "1/3", "4/11"]);
        assert_eq!(c.max_corner, 4);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            constructive_path(&knot("4/5")),
            Err(PathError::AllTwosExpansion(_))
        ));
        let odd = build_diagram(&Expansion::new(vec![3, 4]).unwrap()).unwrap();
        assert!(matches!(
            constructive_path(&odd),
            Err(PathError::NotEvenExpansion(_))
        ));
    }

    #[test]
    fn whitehead_paths() {
        for r in [-4, -3, -5, -6, 4, 3, 7, -12] {
            let w = whitehead_two_channel_path(r).unwrap();
            assert_eq!(w.certificate.channel_count, 2, "r = {r}");
            assert!(w.certificate.min_corner >= 2);
            assert_eq!(w.mirrored, r > 0);
        }
        let w = whitehead_two_channel_path(-3).unwrap();
        assert_eq!(w.expansion.terms(), [2, -2, 2]);
        let w = whitehead_two_channel_path(-4).unwrap();
        assert_eq!(w.link.to_string(), "7/16");
        for r in [-2, -1, 0, 1, 2] {
            assert!(matches!(
                whitehead_two_channel_path(r),
                Err(PathError::TooFewTwists(_))
            ));
        }
    }
}
