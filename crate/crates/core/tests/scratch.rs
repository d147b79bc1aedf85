use parext_core::catalog::{self, VerifyOptions};

#[test]
fn exploration_crso() {
    let opts = VerifyOptions { with_automorphisms: true, ..Default::default() };
    for cons in catalog::catalog() {
        if cons.name != "cr-sostar" { continue; }
        for sample in &cons.samples {
            match catalog::verify(&cons, sample, &opts) {
                Ok(rep) => {
                    let ok = catalog::report_ok(&rep);
                    println!(
                        "{} {} {:?}: ax={} reg={} norm={} tf={} flat={} aut={:?} exp={:?}",
                        if ok { "OK  " } else { "FAIL" },
                        rep.construction, rep.params, rep.axioms_ok, rep.regular, rep.normal,
                        rep.torsion_free, rep.flat, rep.aut_dim, rep.expected_aut_dim
                    );
                    for n in &rep.notes {
                        if n.starts_with("EXPECTATION") { println!("   !! {n}"); }
                    }
                }
                Err(e) => println!("ERR  {} {:?}: {e}", cons.name, sample),
            }
        }
    }
}
