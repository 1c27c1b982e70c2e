use rfx::polyring::{Field, MonomialOrder};
use rfx_cli::parser::parse_script;
use rfx_cli::session::{Binding, Options, Session};

fn ring_text(script: &str, name: &str, opts: Options) -> String {
    let stmts = parse_script(script).unwrap();
    let mut s = Session::new(script, opts);
    for st in &stmts {
        s.run(st).unwrap();
    }
    match s.binding(name) {
        Some(Binding::Ring(r)) => r.ring.to_string(),
        other => panic!("{name}: {other:?}"),
    }
}

#[test]
fn printed_rings_parse_back_to_themselves() {
    let cases = [
        ("ring A = k[x,y]/(x*y);", Options::default()),
        ("ring A = k[x,y,z]/(x^2 - y*z, y^3);", Options::default()),
        ("ring A = k[a,b]/(3*a^2 + b);", Options { field: Field::prime(7).unwrap(), ..Options::default() }),
        ("ring S = k[b,c];\nring A = S[x,y]/(x*y - b*c);", Options::default()),
        ("ring A = QQ[u,v]/(u^2 - 1/2*v);", Options { order: MonomialOrder::Lex, ..Options::default() }),
    ];
    for (script, opts) in cases {
        let printed = ring_text(script, "A", opts.clone());
        let again = ring_text(&format!("ring A = {printed};"), "A", opts);
        assert_eq!(printed, again, "{script}");
    }
}

#[test]
fn explicit_fields_override_the_flag() {
    let opts = Options { field: Field::prime(5).unwrap(), ..Options::default() };
    assert!(ring_text("ring A = QQ[x];", "A", opts.clone()).starts_with("QQ["));
    assert!(ring_text("ring A = Fp:7[x];", "A", opts.clone()).starts_with("Fp:7["));
    assert!(ring_text("ring A = k[x];", "A", opts).starts_with("Fp:5["));
}
