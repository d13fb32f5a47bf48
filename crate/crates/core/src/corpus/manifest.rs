//! The corpus coverage ledger: a flat text mirror of the registry.
//!
//! `corpus_manifest.txt` pins the full list of record ids with their
//! groups and statuses, plus explicit notes for the displays that are
//! deliberately covered by an existing record or by the acceptance suite
//! rather than by a record of their own.  The tests below keep the file
//! and the registry in lockstep, so adding, removing, or reclassifying a
//! record is always a visible two-sided change.

const TEXT: &str = include_str!("../../corpus_manifest.txt");

/// One `record` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordLine {
    pub id: String,
    pub group: String,
    pub status: String,
}

/// One `note` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Note {
    pub key: String,
    pub text: String,
}

/// The parsed ledger.
#[derive(Debug, Clone, Default)]
pub struct Manifest {
    pub records: Vec<RecordLine>,
    pub notes: Vec<Note>,
}

fn parse(text: &str) -> std::result::Result<Manifest, String> {
    let mut m = Manifest::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        match fields.as_slice() {
            ["record", id, group, status] => m.records.push(RecordLine {
                id: (*id).into(),
                group: (*group).into(),
                status: (*status).into(),
            }),
            ["note", key, text] => m.notes.push(Note {
                key: (*key).into(),
                text: (*text).into(),
            }),
            _ => return Err(format!("manifest line {}: malformed: {raw}", i + 1)),
        }
    }
    Ok(m)
}

/// The ledger shipped with this crate.
pub fn manifest() -> Manifest {
    parse(TEXT).expect("corpus_manifest.txt must parse")
}

#[cfg(test)]
mod tests {
    use super::super::{registry, Status};
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn manifest_mirrors_registry_exactly() {
        let m = manifest();
        let recs = registry();
        assert_eq!(
            m.records.len(),
            recs.len(),
            "manifest lists {} records, registry holds {}",
            m.records.len(),
            recs.len()
        );
        for (line, rec) in m.records.iter().zip(recs.iter()) {
            assert_eq!(line.id, rec.id, "manifest order diverges at {}", line.id);
            assert_eq!(line.group, rec.group_tag(), "group mismatch for {}", rec.id);
            assert_eq!(
                line.status,
                rec.status.as_str(),
                "status mismatch for {}",
                rec.id
            );
            assert!(
                Status::parse(&line.status).is_some(),
                "unknown status word for {}",
                rec.id
            );
        }
    }

    /// The registry size is frozen; growing or shrinking the corpus is a
    /// deliberate act that must touch this number, the manifest, and the
    /// group file together.
    #[test]
    fn registry_size_is_frozen() {
        assert_eq!(registry().len(), 98);
        assert!(registry().len() >= 55, "the corpus must stay a superset");
    }

    #[test]
    fn ids_are_unique_and_notes_are_disjoint() {
        let mut seen = BTreeSet::new();
        for r in registry() {
            assert!(seen.insert(r.id.clone()), "duplicate record id {}", r.id);
        }
        let mut keys = BTreeSet::new();
        for n in manifest().notes {
            assert!(!n.text.is_empty(), "empty note for {}", n.key);
            assert!(keys.insert(n.key.clone()), "duplicate note key {}", n.key);
            assert!(
                !seen.contains(&n.key),
                "note key {} shadows a record id",
                n.key
            );
        }
        assert!(!keys.is_empty());
    }

    /// Parametric groups must keep a mixed sample plan: at least five
    /// constant points and two genuine `q`-monomials per record.
    #[test]
    fn functional_equation_records_sample_constants_and_monomials() {
        for rec in registry().iter().filter(|r| r.group == 9) {
            let mut constants = 0;
            let mut monomials = 0;
            for s in &rec.samples {
                let p = s.get_point("a").expect("G9 samples bind `a`");
                if p.exp.numer() == &0 {
                    constants += 1;
                } else {
                    monomials += 1;
                }
            }
            assert!(
                constants >= 5 && monomials >= 2,
                "{}: sample plan too thin ({} constants, {} monomials)",
                rec.id,
                constants,
                monomials
            );
        }
    }
}
