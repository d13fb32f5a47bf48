use qdual_core::corpus::{find, verify_record};

#[test]
fn debug_tenth_iii_iv() {
    for id in ["tenth-compare-III", "tenth-compare-IV"] {
        let rec = find(id).unwrap();
        let rep = verify_record(rec, Some(30));
        println!("{id} pass={} mism={:?}", rep.passed(), rep.first_mismatch);
        assert!(rep.passed());
    }
}

#[test]
fn debug_632_func() {
    for id in ["ABII-6.3.2-func-A", "ABII-6.3.2-func-B"] {
        let rec = find(id).unwrap();
        let rep = verify_record(rec, Some(10));
        println!("{id} pass={} mism={:?}", rep.passed(), rep.first_mismatch);
        let s = &rec.samples[0];
        let lhs = (rec.lhs)(s, 10).unwrap();
        let rhs = (rec.rhs)(s, 10).unwrap();
        println!("  lhs = {lhs}");
        println!("  rhs = {rhs}");
    }
}
