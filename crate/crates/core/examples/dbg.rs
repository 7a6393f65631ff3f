use linkalg::config::RunConfig;
use linkalg::diagram::*;
use linkalg::distinguish::link_fingerprint;
use linkalg::fixtures;

fn main() {
    let cfg = RunConfig::default();
    let d0 = fixtures::hopf_unknot();
    let moves: Vec<MoveSpec> = vec![
        MoveSpec::R2 { over: "b".into(), under: "c".into(), writhe: -1 },
        MoveSpec::R2Inv { c1: "q.1".into(), c2: "q.2".into() },
        MoveSpec::R2 { over: "c".into(), under: "b".into(), writhe: 1 },
        MoveSpec::R1Plus { arc: "b.2".into(), writhe: -1 },
        MoveSpec::R2 { over: "b".into(), under: "a".into(), writhe: -1 },
        MoveSpec::R2 { over: "c".into(), under: "a.2".into(), writhe: -1 },
        MoveSpec::R1Plus { arc: "a.2".into(), writhe: 1 },
        MoveSpec::R1Plus { arc: "a.2.3".into(), writhe: 1 },
        MoveSpec::R2 { over: "b.2".into(), under: "a".into(), writhe: 1 },
        MoveSpec::R1Inv { crossing: "k.2".into() },
        MoveSpec::R1Plus { arc: "a.2.1".into(), writhe: -1 },
        MoveSpec::R2 { over: "a.2.1".into(), under: "b".into(), writhe: -1 },
        MoveSpec::R1Plus { arc: "a.1".into(), writhe: 1 },
        MoveSpec::R1Plus { arc: "a.1".into(), writhe: 1 },
        MoveSpec::R1Inv { crossing: "k.5".into() },
        MoveSpec::R1Plus { arc: "b.1".into(), writhe: -1 },
        MoveSpec::R1Plus { arc: "a.1.1".into(), writhe: -1 },
        MoveSpec::R1Inv { crossing: "k.3".into() },
        MoveSpec::R1Inv { crossing: "k.4".into() },
        MoveSpec::R1Plus { arc: "a.4".into(), writhe: -1 },
    ];
    let base = link_fingerprint(&d0, &cfg).unwrap();
    let mut cur = d0.clone();
    for (i, m) in moves.iter().enumerate() {
        cur = reidemeister_move(&cur, m).unwrap();
        let fp = link_fingerprint(&cur, &cfg).unwrap();
        if fp.ideals != base.ideals {
            println!("drift first appears after move {}: {:?}", i, m);
            for k in 0..fp.ideals.len() {
                if fp.ideals[k].values != base.ideals[k].values {
                    for (j, (a, b)) in base.ideals[k].values.iter().zip(&fp.ideals[k].values).enumerate() {
                        if a != b {
                            println!("  k={} point {:?}: {} vs {}", k, base.ideals[k].points[j], a, b);
                        }
                    }
                }
            }
            let p = linkalg::alexander::simplify(&linkalg::alexander::build_presentation(&cur).unwrap());
            println!("simplified after move: {} gens x {} cols", p.generators.len(), p.matrix.first().map(|r| r.len()).unwrap_or(0));
            for (r, g) in p.generators.iter().enumerate() {
                let row: Vec<String> = p.matrix[r].iter().map(|e| e.to_string()).collect();
                println!("  {} [{}]: {:?}", g, p.components[r], row);
            }
            return;
        }
    }
    println!("no drift reproduced");
}
