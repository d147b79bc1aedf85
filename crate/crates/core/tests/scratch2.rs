use parext_core::catalog::{self};
use parext_core::scalar::int;

#[test]
fn probe_sostar() {
    let mut params = std::collections::BTreeMap::new();
    params.insert("n".to_string(), int(2));
    params.insert("b1".to_string(), int(1));
    params.insert("b2".to_string(), int(0));
    params.insert("b3".to_string(), int(0));
    params.insert("b4".to_string(), int(0));
    match catalog::build("cr-sostar", &params) {
        Ok(_) => println!("built ok"),
        Err(e) => println!("error: {e}"),
    }
}
