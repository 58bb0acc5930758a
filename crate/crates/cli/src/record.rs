//! Serialized ideals. A record stores enough to rebuild an `Ideal` exactly:
//! field, variable count, order, structural kind, and canonical generator
//! text. Records are content-addressed by the rebuilt ideal's hash, so a
//! record loaded by hash is verified against its own name.

use num::BigRational;
use serde::{Deserialize, Serialize};
use symlab_core::scalar::{Field, FieldSpec};
use symlab_core::{
    EngineError, Ideal, IdealKind, MonomialOrder, PointSet, Poly, Ring,
};

/// The structural kind of a stored ideal, with point coordinates rendered as
/// exact coefficient strings so the record is field-faithful.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum KindRecord {
    General,
    Points {
        points: Vec<Vec<String>>,
        multiplicities: Vec<u32>,
    },
    Fermat {
        n: u32,
    },
    MonomialCurve {
        a: u32,
        b: u32,
        c: u32,
    },
}

/// A stored ideal: everything needed to rebuild it, plus its content hash.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealRecord {
    pub hash: String,
    pub field: String,
    pub nvars: usize,
    pub order: String,
    pub kind: KindRecord,
    pub generators: Vec<String>,
}

fn order_name(order: MonomialOrder) -> Result<&'static str, EngineError> {
    match order {
        MonomialOrder::DegRevLex => Ok("degrevlex"),
        MonomialOrder::Lex => Ok("lex"),
        MonomialOrder::Block { .. } => Err(EngineError::unsupported(
            "block orders are internal to elimination and cannot be stored",
        )),
    }
}

fn order_from_name(name: &str) -> Result<MonomialOrder, EngineError> {
    match name {
        "degrevlex" => Ok(MonomialOrder::DegRevLex),
        "lex" => Ok(MonomialOrder::Lex),
        other => Err(EngineError::parse(format!(
            "unknown monomial order {other:?} in ideal record"
        ))),
    }
}

/// Render one field element as an exact string ("3", "-2/5", or a residue).
fn elem_string<F: Field>(field: &F, e: &F::Elem) -> String {
    field.elem_to_string(e)
}

/// Parse an exact coefficient string back into the field.
pub fn parse_elem<F: Field>(field: &F, s: &str) -> Result<F::Elem, EngineError> {
    let r: BigRational = s
        .trim()
        .parse()
        .map_err(|_| EngineError::parse(format!("bad coordinate {s:?}")))?;
    field.from_ratio(r.numer(), r.denom())
}

impl IdealRecord {
    /// Dehydrate an ideal into its storable record.
    pub fn from_ideal<F: Field>(ideal: &Ideal<F>) -> Result<IdealRecord, EngineError> {
        let ring = ideal.ring();
        let field = ring.field();
        let kind = match ideal.kind() {
            IdealKind::General => KindRecord::General,
            IdealKind::Points(ps) => KindRecord::Points {
                points: ps
                    .points
                    .iter()
                    .map(|p| p.iter().map(|e| elem_string(field, e)).collect())
                    .collect(),
                multiplicities: ps.multiplicities.clone(),
            },
            IdealKind::Fermat { n } => KindRecord::Fermat { n: *n },
            IdealKind::MonomialCurve { a, b, c } => KindRecord::MonomialCurve {
                a: *a,
                b: *b,
                c: *c,
            },
        };
        Ok(IdealRecord {
            hash: ideal.content_hash().to_string(),
            field: field.spec_string(),
            nvars: ring.nvars(),
            order: order_name(ring.order())?.to_string(),
            kind,
            generators: ideal.generators().iter().map(|g| g.canonical_string()).collect(),
        })
    }

    /// Rebuild the ideal in the given field. The caller picks `F` to match
    /// `self.field` (see `FieldSpec`); a mismatch is an error, not a recode.
    pub fn to_ideal<F: Field>(&self, field: F) -> Result<Ideal<F>, EngineError> {
        if FieldSpec::parse(&self.field)? != FieldSpec::parse(&field.spec_string())? {
            return Err(EngineError::parse(format!(
                "record is over {} but the run is configured for {}",
                self.field,
                field.spec_string()
            )));
        }
        let order = order_from_name(&self.order)?;
        let ring = Ring::new(self.nvars, field, order);
        let gens = self
            .generators
            .iter()
            .map(|g| Poly::parse(&ring, g))
            .collect::<Result<Vec<_>, _>>()?;
        let ideal = Ideal::new(&ring, gens)?;
        let ideal = match &self.kind {
            KindRecord::General => ideal,
            KindRecord::Points {
                points,
                multiplicities,
            } => {
                if points.len() != multiplicities.len() {
                    return Err(EngineError::parse(
                        "points and multiplicities disagree in length".to_string(),
                    ));
                }
                let field = ring.field();
                let parsed = points
                    .iter()
                    .map(|p| {
                        p.iter()
                            .map(|s| parse_elem(field, s))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                for p in &parsed {
                    if p.len() != self.nvars {
                        return Err(EngineError::parse(format!(
                            "point has {} coordinates but the ring has {} variables",
                            p.len(),
                            self.nvars
                        )));
                    }
                }
                ideal.with_kind(IdealKind::Points(PointSet {
                    points: parsed,
                    multiplicities: multiplicities.clone(),
                }))
            }
            KindRecord::Fermat { n } => ideal.with_kind(IdealKind::Fermat { n: *n }),
            KindRecord::MonomialCurve { a, b, c } => ideal.with_kind(IdealKind::MonomialCurve {
                a: *a,
                b: *b,
                c: *c,
            }),
        };
        Ok(ideal)
    }

    /// Verify that the record's stored hash matches the ideal it rebuilds.
    pub fn verify_hash<F: Field>(&self, field: F) -> Result<(), EngineError> {
        let ideal = self.to_ideal(field)?;
        if ideal.content_hash() != self.hash {
            return Err(EngineError::parse(format!(
                "ideal record hash {} does not match its content ({})",
                self.hash,
                ideal.content_hash()
            )));
        }
        Ok(())
    }
}
