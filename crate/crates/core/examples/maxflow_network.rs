// Dinic max-flow on the diamond network.

use std::error::Error;

use flowsched::maxflow::{max_flow, FlowNetwork};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // nodes: 0 source, 1 a, 2 b, 3 sink
    let mut net = FlowNetwork::new(4, 0, 3)?;
    net.add_edge(0, 1, 3)?;
    net.add_edge(0, 2, 2)?;
    net.add_edge(1, 3, 2)?;
    net.add_edge(2, 3, 3)?;
    let flow = max_flow(&net);
    println!("max flow {}", flow.value);
    for (e, f) in net.edges().iter().zip(&flow.edge_flows) {
        println!("  {} -> {}: {f}/{}", e.from, e.to, e.capacity);
    }
    assert_eq!(flow.value, 4);
    assert_eq!(flow.net_outflow(&net, 0), 4);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
