//! Amplitude encoding: build the RY angle tree for a real vector, compile it
//! to multiplexed rotations and check the prepared state.
//!
//!     cargo run --example state_prep

use qtext::feature_map::{amplitude_circuit, build_angle_tree, pad_and_normalize, rotation_count};

fn main() -> qtext::Result<()> {
    let raw = [0.5, -1.0, 2.0, 0.25, 1.5, 0.0, -0.75];
    let target = pad_and_normalize(&raw, 3)?;
    let tree = build_angle_tree(&target)?;
    for (k, level) in tree.levels().iter().enumerate() {
        let angles: Vec<String> = level.iter().map(|a| format!("{a:+.4}")).collect();
        println!("level {k}: [{}]", angles.join(", "));
    }

    let circuit = amplitude_circuit(&tree);
    println!("{} gates, {} rotations", circuit.len(), rotation_count(&circuit));

    let state = circuit.prepare();
    let mut worst: f64 = 0.0;
    for (i, (amp, want)) in state.amplitudes().iter().zip(target.values()).enumerate() {
        println!("|{i:03b}>  {:+.6}  (target {want:+.6})", amp.re);
        worst = worst.max((amp - want).norm());
    }
    println!("max deviation {worst:.2e}");
    Ok(())
}
