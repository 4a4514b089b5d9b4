//! Resolution of words, embeddings, matrices and fans from command line flags.

use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::Args;
use subfan::complex::{multiassoc_word, SubwordComplex};
use subfan::counting::{
    closed_form_counting, counting_matrix, enumerate_embeddings, restricted_matrix, CountingMatrix,
    Embedding,
};
use subfan::coxeter::{CoxeterGroup, Word};
use subfan::fan::{a4_fan, Fan, RayFamily};
use subfan_linalg::RationalMatrix;

/// Group, Coxeter element, word and embedding.
#[derive(Args, Clone, Debug)]
pub struct Problem {
    #[arg(long)]
    pub rank: Option<usize>,
    /// Group type: A, or B for B2.
    #[arg(long, default_value = "A")]
    pub group: String,
    /// Coxeter element, default 12...n.
    #[arg(long)]
    pub c: Option<String>,
    /// Power of c of the ambient word.
    #[arg(long)]
    pub m: Option<usize>,
    /// Word: letters, c^M, c^Kw0, power:m=M, multiassoc:k=K or obs.
    #[arg(long)]
    pub word: Option<String>,
    /// Embedding of the word into c^m: first (default), identity, index:N, or 1-based positions.
    #[arg(long)]
    pub embedding: Option<String>,
}

pub fn parse_group(name: &str, rank: usize) -> Result<CoxeterGroup> {
    match name.to_ascii_uppercase().as_str() {
        "A" => {
            ensure!(rank >= 1, "rank must be at least 1");
            Ok(CoxeterGroup::A(rank))
        }
        "B" | "B2" => {
            ensure!(rank == 2, "type B is supported in rank 2 only");
            Ok(CoxeterGroup::B2)
        }
        _ => bail!("unsupported group type {name}"),
    }
}

pub fn default_coxeter(rank: usize) -> Result<Word> {
    Ok(Word::new(rank, (1..=rank as u8).collect())?)
}

/// Pairs such as "1-3,2-4".
pub fn parse_pairs(s: &str) -> Result<Vec<(u8, u8)>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t
                .trim()
                .split_once('-')
                .with_context(|| format!("pair {t} must look like 1-3"))?;
            Ok((a.parse()?, b.parse()?))
        })
        .collect()
}

fn resolve_word(spec: &str, rank: usize, c: &Word) -> Result<Word> {
    let s = spec.trim();
    if s.eq_ignore_ascii_case("obs") {
        ensure!(rank == 3, "obs is a rank 3 word");
        return Ok(Word::parse(3, "1212321212")?);
    }
    if let Some(k) = s.strip_prefix("multiassoc:k=") {
        return Ok(multiassoc_word(
            c,
            k.parse().context("k must be a number")?,
        )?);
    }
    if let Some(m) = s.strip_prefix("power:m=") {
        return Ok(c.power(m.parse().context("m must be a number")?));
    }
    if let Some(rest) = s.strip_prefix("c^") {
        return Ok(match rest.strip_suffix("w0") {
            Some(k) => multiassoc_word(c, k.parse().context("k must be a number")?)?,
            None => c.power(rest.parse().context("power must be a number")?),
        });
    }
    Ok(Word::parse(rank, s)?)
}

impl Problem {
    pub fn rank(&self) -> Result<usize> {
        self.rank.context("--rank is required")
    }

    pub fn group(&self) -> Result<CoxeterGroup> {
        parse_group(&self.group, self.rank()?)
    }

    pub fn coxeter_element(&self) -> Result<Word> {
        let rank = self.rank()?;
        match &self.c {
            Some(c) => Ok(Word::parse(rank, c)?),
            None => default_coxeter(rank),
        }
    }

    pub fn require_m(&self) -> Result<usize> {
        self.m.context("--m is required")
    }

    pub fn word(&self) -> Result<Word> {
        let c = self.coxeter_element()?;
        match (&self.word, self.m) {
            (Some(w), _) => resolve_word(w, self.rank()?, &c),
            (None, Some(m)) => Ok(c.power(m)),
            (None, None) => bail!("give --word or --m"),
        }
    }

    pub fn complex(&self) -> Result<SubwordComplex> {
        Ok(SubwordComplex::new(self.group()?, self.word()?)?)
    }

    /// Counting matrix of `c^m` and the embedding of `--word`, if any.
    pub fn counting(&self) -> Result<(CountingMatrix, Option<Embedding>)> {
        ensure!(
            matches!(self.group()?, CoxeterGroup::A(_)),
            "counting matrices are defined in type A"
        );
        let c = self.coxeter_element()?;
        let m = self.require_m()?;
        let d = counting_matrix(self.rank()?, &c, m)?;
        let Some(_) = &self.word else {
            return Ok((d, None));
        };
        let q = self.word()?;
        let spec = self.embedding.as_deref().unwrap_or("first");
        let phi = match spec {
            "identity" => {
                ensure!(q == c.power(m), "the identity embedding needs the word c^m");
                Embedding::new(q, c, m, (0..d.word.len()).collect())?
            }
            "first" => enumerate_embeddings(&q, &c, m)
                .next()
                .context("the word does not embed into c^m")?,
            s if s.starts_with("index:") => {
                let n: usize = s["index:".len()..]
                    .parse()
                    .context("index must be a number")?;
                enumerate_embeddings(&q, &c, m)
                    .nth(n)
                    .with_context(|| format!("fewer than {} embeddings", n + 1))?
            }
            s => {
                let pos = s
                    .split([',', ' '])
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<usize>()?
                            .checked_sub(1)
                            .context("positions are 1-based")
                    })
                    .collect::<Result<Vec<_>>>()?;
                Embedding::new(q, c, m, pos)?
            }
        };
        Ok((d, Some(phi)))
    }

    /// The word and its (restricted) counting matrix.
    pub fn gale_pair(&self) -> Result<(Word, RationalMatrix)> {
        let (d, phi) = self.counting()?;
        Ok(match phi {
            Some(phi) => (phi.source.clone(), restricted_matrix(&d, &phi)?),
            None => (d.word.clone(), d.matrix),
        })
    }
}

/// Matrix from a JSON (`{"rows","cols","entries"}`) or CSV file.
pub fn load_matrix(path: &Path) -> Result<RationalMatrix> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let m = if path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
    {
        RationalMatrix::from_csv(&text)?
    } else {
        RationalMatrix::from_json(&text)?
    };
    Ok(m)
}

/// Where a fan comes from.
#[derive(Args, Clone, Debug)]
pub struct FanSource {
    /// Fan JSON file.
    #[arg(long)]
    pub fan: Option<PathBuf>,
    /// Built-in ray family: m213, m123, m12, a2, a1 (with --m).
    #[arg(long)]
    pub family: Option<String>,
    /// Explicit A4 fan with k = 2 or 3.
    #[arg(long)]
    pub a4: Option<usize>,
    /// Gale dual matrix for the signature check (JSON or CSV).
    #[arg(long)]
    pub gale: Option<PathBuf>,
    #[command(flatten)]
    pub problem: Problem,
}

impl FanSource {
    /// The fan and the Gale dual used for the signature check.
    pub fn resolve(&self) -> Result<(Fan, Option<RationalMatrix>)> {
        let (fan, d) = if let Some(path) = &self.fan {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let v: serde_json::Value =
                serde_json::from_str(&text).context("fan file is not JSON")?;
            (Fan::from_json(&v)?, None)
        } else if let Some(k) = self.a4 {
            let (fan, sig) = a4_fan(k)?;
            (fan, Some(sig))
        } else if let Some(f) = &self.family {
            let family = RayFamily::parse(f)?;
            let m = self.problem.require_m()?;
            let fan = Fan::builtin(family, m)?;
            let c = family.coxeter_element();
            let d = match family {
                RayFamily::M213 | RayFamily::M123 => Some(closed_form_counting(&c, m)?.matrix),
                RayFamily::A2 | RayFamily::A1 => Some(counting_matrix(c.rank(), &c, m)?.matrix),
                RayFamily::M12 => None,
            };
            (fan, d)
        } else {
            let (q, d) = self.problem.gale_pair()?;
            let complex = SubwordComplex::new(self.problem.group()?, q)?;
            let rays = d.kernel_basis()?;
            (Fan::new(complex, rays)?, Some(d))
        };
        match &self.gale {
            Some(path) => Ok((fan, Some(load_matrix(path)?))),
            None => Ok((fan, d)),
        }
    }
}
