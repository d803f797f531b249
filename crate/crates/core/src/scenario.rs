//! Scenario files: a TOML description of the groups, action, extension and base cover a
//! computation runs on. Everything named in a file is built and checked when it is loaded.

use serde::Deserialize;

use crate::abelian::{AbElement, FinAbGroup};
use crate::budget::Budget;
use crate::cohomology::{h2, Cochain};
use crate::error::{Error, Result};
use crate::extension::{build_extension, Extension};
use crate::group::{semidirect, weyl_b, weyl_d, FiniteGroup, GAction, Perm};
use crate::moduli::WeylFamily;
use crate::surface::{surjections, SurfaceRep};

/// Largest group a scenario may name, for `W` and for `N`.
pub const SCENARIO_ORDER_BOUND: usize = 4096;
/// Largest `|W|·|T|`, the size of an action table.
pub const ACTION_TABLE_BOUND: u64 = 1 << 20;
pub const MAX_GENUS: usize = 16;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    genus: Option<usize>,
    w: Option<RawGroup>,
    t: Option<RawAbelian>,
    sigma: Option<RawAction>,
    n: Option<RawExtension>,
    cover: Option<RawCover>,
    budget: Option<RawBudget>,
    example: Option<RawExample>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    named: Option<String>,
    generators: Option<Vec<String>>,
    table: Option<Vec<Vec<usize>>>,
    labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAbelian {
    orders: Vec<u64>,
}

/// An element of `W`: its index, its label, or a permutation in cycle notation.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Elem {
    Index(usize),
    Label(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenImage {
    element: Elem,
    matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawAction {
    Trivial,
    Sign,
    Permute,
    Character { odd: Vec<Elem> },
    Generators { images: Vec<RawGenImage> },
    Matrices { matrices: Vec<Vec<Vec<i64>>> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawExtension {
    Split,
    Class {
        coords: Vec<u64>,
    },
    FactorSet {
        values: Vec<Vec<u64>>,
    },
    Named {
        name: String,
    },
    Explicit {
        group: RawGroup,
        embed: Vec<usize>,
        project: Vec<usize>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCover {
    index: Option<usize>,
    images: Option<Vec<Elem>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBudget {
    tuples: u64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExample {
    n: usize,
    family: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverSelector {
    /// Position in [`surjections`].
    Index(usize),
    Images(SurfaceRep),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Example {
    pub n: usize,
    pub family: Option<WeylFamily>,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub genus: Option<usize>,
    pub w: Option<FiniteGroup>,
    /// The action, carrying `T` as its target.
    pub sigma: Option<GAction>,
    pub n: Option<Extension>,
    pub cover: Option<CoverSelector>,
    pub budget: Option<Budget>,
    pub example: Option<Example>,
}

fn parse_err(m: impl Into<String>) -> Error {
    Error::Parse(m.into())
}

fn bounded(n: usize, limit: usize, what: &str) -> Result<usize> {
    if n == 0 || n > limit {
        return Err(parse_err(format!("{what} parameter {n} outside 1..={limit}")));
    }
    Ok(n)
}

fn at_least_two(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(parse_err("weyl_d needs n ≥ 2"));
    }
    Ok(n)
}

/// Parses a named constructor: `cyclic n`, `dihedral n`, `symmetric n`, `weyl_b n`,
/// `weyl_d n`, `klein` or `trivial`, joined by ` x ` for direct products.
pub fn parse_named_group(s: &str) -> Result<FiniteGroup> {
    let mut factors = s.split(" x ").map(parse_factor);
    let first = factors.next().ok_or_else(|| parse_err("empty group name"))??;
    factors.try_fold(first, |acc, g| {
        let g = g?;
        if acc.order() * g.order() > SCENARIO_ORDER_BOUND {
            return Err(parse_err("direct product is too large"));
        }
        FiniteGroup::direct_product(&acc, &g)
    })
}

fn parse_factor(s: &str) -> Result<FiniteGroup> {
    let words: Vec<&str> = s.split_whitespace().collect();
    let param = |limit: usize| -> Result<usize> {
        match words.as_slice() {
            [_, n] => bounded(
                n.parse().map_err(|_| parse_err(format!("bad parameter {n:?}")))?,
                limit,
                words[0],
            ),
            _ => Err(parse_err(format!("{:?} takes one parameter", words[0]))),
        }
    };
    match words.first().copied() {
        Some("trivial") if words.len() == 1 => Ok(FiniteGroup::trivial()),
        Some("klein") if words.len() == 1 => {
            let z2 = FiniteGroup::cyclic(2)?;
            FiniteGroup::direct_product(&z2, &z2)
        }
        Some("cyclic") => FiniteGroup::cyclic(param(SCENARIO_ORDER_BOUND)?),
        Some("dihedral") => FiniteGroup::dihedral(param(SCENARIO_ORDER_BOUND / 2)?),
        Some("symmetric") => FiniteGroup::symmetric(param(6)?),
        Some("weyl_b") => Ok(weyl_b(param(5)?)?.0.group),
        Some("weyl_d") => Ok(weyl_d(at_least_two(param(5)?)?)?.0.group),
        _ => Err(parse_err(format!("unknown group {s:?}"))),
    }
}

fn build_group(raw: &RawGroup) -> Result<FiniteGroup> {
    let given = [raw.named.is_some(), raw.generators.is_some(), raw.table.is_some()];
    if given.iter().filter(|&&b| b).count() != 1 {
        return Err(parse_err(
            "a group needs exactly one of `named`, `generators`, `table`",
        ));
    }
    let g = if let Some(name) = &raw.named {
        parse_named_group(name)?
    } else if let Some(gens) = &raw.generators {
        let perms = gens
            .iter()
            .map(|s| Perm::parse(s, None))
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::from_permutations(&perms, SCENARIO_ORDER_BOUND)?
    } else {
        let table = raw.table.clone().expect("checked above");
        if table.len() > SCENARIO_ORDER_BOUND {
            return Err(parse_err("multiplication table is too large"));
        }
        return FiniteGroup::from_table(table, raw.labels.clone());
    };
    match &raw.labels {
        Some(l) => g.with_labels(l.clone()),
        None => Ok(g),
    }
}

fn resolve(w: &FiniteGroup, e: &Elem) -> Result<usize> {
    match e {
        Elem::Index(i) if *i < w.order() => Ok(*i),
        Elem::Index(i) => Err(parse_err(format!("element index {i} out of range"))),
        Elem::Label(s) => {
            if let Some(i) = w.labels().iter().position(|l| l == s) {
                return Ok(i);
            }
            let p = Perm::parse(s, w.degree())
                .map_err(|_| parse_err(format!("no element labelled {s:?}")))?;
            (0..w.order())
                .find(|&i| w.perm(i) == Some(&p))
                .ok_or_else(|| parse_err(format!("{s} is not in the group")))
        }
    }
}

fn build_action(w: &FiniteGroup, t: &FinAbGroup, raw: &RawAction) -> Result<GAction> {
    match raw {
        RawAction::Trivial => GAction::trivial(w, t),
        RawAction::Sign => GAction::sign(w, t),
        RawAction::Permute => GAction::permute(w, t),
        RawAction::Character { odd } => {
            let odd = odd.iter().map(|e| resolve(w, e)).collect::<Result<Vec<_>>>()?;
            let flags: Vec<bool> = (0..w.order()).map(|x| odd.contains(&x)).collect();
            GAction::via_character(w, t, &flags)
        }
        RawAction::Generators { images } => {
            let gens = images
                .iter()
                .map(|g| Ok((resolve(w, &g.element)?, g.matrix.clone())))
                .collect::<Result<Vec<_>>>()?;
            GAction::from_generator_matrices(w, t, &gens)
        }
        RawAction::Matrices { matrices } => GAction::from_matrices(w, t, matrices.clone()),
    }
}

fn named_extension(name: &str) -> Result<Extension> {
    let words: Vec<&str> = name.split_whitespace().collect();
    let [kind, n] = words.as_slice() else {
        return Err(parse_err(format!("unknown extension {name:?}")));
    };
    let n: usize = n
        .parse()
        .map_err(|_| parse_err(format!("bad parameter in {name:?}")))?;
    let (sd, sigma) = match *kind {
        "weyl_b" => weyl_b(bounded(n, 5, kind)?)?,
        "weyl_d" => weyl_d(at_least_two(bounded(n, 5, kind)?)?)?,
        "dihedral" => {
            let t = FinAbGroup::new(vec![bounded(n, SCENARIO_ORDER_BOUND / 2, kind)? as u64])?;
            let w = FiniteGroup::cyclic(2)?;
            let sigma = GAction::via_character(&w, &t, &[false, true])?;
            (semidirect(&t, &w, &sigma)?, sigma)
        }
        _ => return Err(parse_err(format!("unknown extension {name:?}"))),
    };
    Extension::new(sd.group, sigma.target(), sigma.source(), sd.embed, sd.project)
}

fn build_extension_spec(sigma: &GAction, raw: &RawExtension, budget: &Budget) -> Result<Extension> {
    let w = sigma.source();
    let t = sigma.target();
    match raw {
        RawExtension::Split => build_extension(sigma, &Cochain::zero(2, w.order(), t)),
        RawExtension::Class { coords } => {
            let h = h2(sigma, budget)?;
            let g = h.group();
            if coords.len() != g.rank() || coords.iter().zip(g.orders()).any(|(c, d)| c >= d) {
                return Err(parse_err(format!(
                    "class coordinates {coords:?} do not lie in H² ≅ {g}"
                )));
            }
            build_extension(sigma, &h.class(coords).rep)
        }
        RawExtension::FactorSet { values } => {
            let values = values.iter().map(|v| AbElement(v.clone())).collect();
            build_extension(sigma, &Cochain::from_values(2, w.order(), t, values)?)
        }
        RawExtension::Named { .. } => unreachable!("named extensions are built first"),
        RawExtension::Explicit {
            group,
            embed,
            project,
        } => Extension::new(build_group(group)?, t, w, embed.clone(), project.clone()),
    }
}

impl Scenario {
    pub fn from_toml_str(text: &str) -> Result<Scenario> {
        let raw: RawScenario =
            toml::from_str(text).map_err(|e| parse_err(format!("scenario: {}", e.message())))?;
        if raw.genus.is_none() && raw.w.is_none() && raw.n.is_none() && raw.example.is_none() {
            return Err(parse_err(
                "scenario defines nothing: give at least one of genus, [w], [n], [example]",
            ));
        }
        if let Some(g) = raw.genus {
            bounded(g, MAX_GENUS, "genus")?;
        }
        let budget = raw.budget.as_ref().map(|b| Budget::new(u128::from(b.tuples)));
        let work_budget = budget.unwrap_or_default();

        let (w, sigma, n) = match &raw.n {
            Some(RawExtension::Named { name }) => {
                if raw.w.is_some() || raw.t.is_some() || raw.sigma.is_some() {
                    return Err(parse_err(
                        "a named extension fixes W, T and σ; drop [w], [t] and [sigma]",
                    ));
                }
                let ext = named_extension(name)?;
                (Some(ext.quotient().clone()), Some(ext.action().clone()), Some(ext))
            }
            other => {
                let w = raw.w.as_ref().map(build_group).transpose()?;
                let sigma = match (&w, &raw.t) {
                    (Some(w), Some(t)) => {
                        let t = FinAbGroup::new(t.orders.clone())?;
                        let size = t.order_u64().unwrap_or(u64::MAX);
                        if size.saturating_mul(w.order() as u64) > ACTION_TABLE_BOUND {
                            return Err(parse_err("|W|·|T| is too large for an action table"));
                        }
                        let raw_sigma = raw.sigma.clone().unwrap_or(RawAction::Trivial);
                        Some(build_action(w, &t, &raw_sigma)?)
                    }
                    (None, Some(_)) => return Err(parse_err("[t] needs [w]")),
                    (_, None) if raw.sigma.is_some() => return Err(parse_err("[sigma] needs [t]")),
                    _ => None,
                };
                let n = match (other, &sigma) {
                    (Some(spec), Some(s)) => Some(build_extension_spec(s, spec, &work_budget)?),
                    (Some(_), None) => return Err(parse_err("[n] needs [w] and [t]")),
                    (None, _) => None,
                };
                if let Some(ext) = &n {
                    if ext.group().order() > SCENARIO_ORDER_BOUND {
                        return Err(parse_err("extension group is too large"));
                    }
                }
                (w, sigma, n)
            }
        };

        let cover = match &raw.cover {
            None => None,
            Some(RawCover {
                index: Some(i),
                images: None,
            }) => Some(CoverSelector::Index(*i)),
            Some(RawCover {
                index: None,
                images: Some(images),
            }) => {
                let w = w.as_ref().ok_or_else(|| parse_err("[cover] images need [w]"))?;
                let images = images.iter().map(|e| resolve(w, e)).collect::<Result<Vec<_>>>()?;
                if raw.genus.is_some_and(|g| 2 * g != images.len()) {
                    return Err(parse_err("cover images must number 2·genus"));
                }
                let rep = SurfaceRep::new(w, images)?;
                if !rep.is_surjective(w) {
                    return Err(parse_err("cover images do not generate W"));
                }
                Some(CoverSelector::Images(rep))
            }
            Some(_) => return Err(parse_err("[cover] needs exactly one of `index`, `images`")),
        };

        let example = match &raw.example {
            None => None,
            Some(e) => {
                let family = match e.family.as_deref() {
                    None => None,
                    Some("BC" | "B" | "C") => Some(WeylFamily::BC),
                    Some("D") => Some(WeylFamily::D),
                    Some(f) => return Err(parse_err(format!("unknown Weyl family {f:?}"))),
                };
                Some(Example { n: e.n, family })
            }
        };

        Ok(Scenario {
            genus: raw.genus.or(match &cover {
                Some(CoverSelector::Images(r)) => Some(r.genus()),
                _ => None,
            }),
            w,
            sigma,
            n,
            cover,
            budget,
            example,
        })
    }

    pub fn genus(&self) -> Result<usize> {
        self.genus.ok_or_else(|| parse_err("scenario has no genus"))
    }

    pub fn w(&self) -> Result<&FiniteGroup> {
        self.w.as_ref().ok_or_else(|| parse_err("scenario has no [w]"))
    }

    pub fn sigma(&self) -> Result<&GAction> {
        self.sigma.as_ref().ok_or_else(|| parse_err("scenario has no [t]"))
    }

    pub fn extension(&self) -> Result<&Extension> {
        self.n.as_ref().ok_or_else(|| parse_err("scenario has no [n]"))
    }

    pub fn example(&self) -> Result<&Example> {
        self.example.as_ref().ok_or_else(|| parse_err("scenario has no [example]"))
    }

    /// The selected surjection `π → W`; the first one if the file names none.
    pub fn rho_bar(&self, budget: &Budget) -> Result<SurfaceRep> {
        select_cover(self.cover.as_ref(), self.genus()?, self.w()?, budget)
    }
}

/// Resolves a selector against the surjections `π → w` of the given genus.
pub fn select_cover(
    selector: Option<&CoverSelector>,
    genus: usize,
    w: &FiniteGroup,
    budget: &Budget,
) -> Result<SurfaceRep> {
    match selector {
        Some(CoverSelector::Images(r)) => {
            if r.genus() != genus || r.images.iter().any(|&x| x >= w.order()) || !r.is_surjective(w) {
                return Err(parse_err("cover images do not fit this group and genus"));
            }
            Ok(r.clone())
        }
        other => {
            let i = match other {
                Some(CoverSelector::Index(i)) => *i,
                _ => 0,
            };
            let all = surjections(genus, w, budget)?;
            let count = all.len();
            all.into_iter()
                .nth(i)
                .ok_or_else(|| parse_err(format!("cover index {i} out of range ({count} surjections)")))
        }
    }
}
