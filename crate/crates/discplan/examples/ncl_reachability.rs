//! Decide reachability questions on a small constraint graph.
//!
//! `cargo run --example ncl_reachability`

use discplan::ncl::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = "\
node a POR
node b POR
node c POR
node d POR
edge ab a b 2
edge ac a c 2
edge ad a d 2
edge bc b c 2
edge bd b d 2
edge cd c d 2
por-inputs a ab ac
por-inputs b ab bc
por-inputs c ac bc
por-inputs d ad bd
";
    let (g, _) = read_graph(text)?;
    assert!(validate_graph(&g).is_empty());
    let start = first_valid_state(&g)?.expect("K4 has a valid orientation");
    println!("start: {:?}", start.toward);
    println!("legal flips: {:?}", legal_flips(&g, &start)?);

    let states = reachable_set(&g, &start)?;
    println!("{} states reachable", states.len());

    // can edge `ab` ever point at `b`?
    let q = NclQuery::StateToEdge { from: start.clone(), edge: "ab".into(), toward: "b".into() };
    match decide(&g, &q)? {
        (true, Some(w)) => println!("ab -> b after flips {:?}", w.flips),
        (found, _) => println!("ab -> b reachable: {found}"),
    }

    let last = states.last().unwrap().clone();
    let (ok, w) = decide(&g, &NclQuery::StateToState { from: start, to: last })?;
    println!("farthest state reachable: {ok} in {} flips", w.map_or(0, |w| w.flips.len()));
    Ok(())
}
