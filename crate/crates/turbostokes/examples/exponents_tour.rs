//! Tour of the exponent and criticality arithmetic: critical weights,
//! admissibility windows, trace smoothness and Serrin pairs.
//!
//! ```bash
//! cargo run --release --example exponents_tour
//! ```

use turbostokes::spaces::exponents::{
    kappa_critical, serrin_exponents, validate_parameters, ParameterTuple,
};

fn main() {
    println!("critical weight κ_c = -1 + (p/2)(2 + δ - d/q)\n");
    println!("{:>3} {:>6} {:>6} {:>7} {:>9} {:>11}", "d", "p", "q", "δ", "κ_c", "admissible");
    for (d, p, q, delta) in [
        (2u32, 2.0, 2.0, 0.0),
        (3, 4.0, 3.0, 0.0),
        (3, 4.0, 3.0, -0.25),
        (2, 8.0, 3.0, -0.4),
        (3, 10.0, 5.0, -0.5),
    ] {
        let kc = kappa_critical(d, p, q, delta);
        println!("{d:>3} {p:>6.1} {q:>6.1} {delta:>7.2} {:>9.4} {:>11}", kc.kappa_c, kc.admissible);
    }

    println!("\nfull tuple assessment (header, δ-range, q-window, integrability):\n");
    for tuple in [
        ParameterTuple { d: 2, p: 2.0, q: 2.0, delta: 0.0, kappa: 0.0 },
        ParameterTuple { d: 3, p: 4.0, q: 3.0, delta: -0.25, kappa: 0.5 },
        ParameterTuple { d: 3, p: 4.0, q: 3.0, delta: 0.0, kappa: 1.0 }, // κ = p/2-1
        ParameterTuple { d: 2, p: 8.0, q: 4.0, delta: -0.5, kappa: 3.0 },
    ] {
        let a = validate_parameters(&tuple);
        println!(
            "  (d={}, p={}, q={}, δ={}, κ={}) -> admissible={}, critical={}, trace smoothness={:.3}",
            tuple.d, tuple.p, tuple.q, tuple.delta, tuple.kappa, a.admissible, a.critical,
            a.trace_smoothness
        );
    }

    println!("\nSerrin pairs γ₀ = 2/p₀ + d/q₀ - 1:\n");
    for (d, p0, q0, d0) in [
        (3u32, 4.0, 6.0, 0.0),
        (2, 2.0, 2.0, 0.0),
        (3, 8.0, 12.0, -0.25),
        (2, 100.0, 100.0, -0.5),
    ] {
        let s = serrin_exponents(d, p0, q0, d0);
        println!(
            "  d={d}, p₀={p0}, q₀={q0} -> γ₀ = {:+.4}{}",
            s.gamma0,
            if s.classic { "  (classical L^p0(L^q0) criterion)" } else { "" }
        );
    }
}
