macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(maxflow_network, "maxflow_network.rs");
example!(timeline_backends, "timeline_backends.rs");
example!(batch_admission, "batch_admission.rs");
example!(interval_coloring, "interval_coloring.rs");
example!(tree_queries, "tree_queries.rs");
example!(revenue_path, "revenue_path.rs");
example!(mobile_dissemination, "mobile_dissemination.rs");
example!(sensor_round_trip, "sensor_round_trip.rs");
example!(permutation_counts, "permutation_counts.rs");
example!(trace_replay, "trace_replay.rs");
example!(cli_session, "cli_session.rs");

#[test]
fn maxflow_network_runs() {
    maxflow_network::run_example().unwrap();
}

#[test]
fn timeline_backends_runs() {
    timeline_backends::run_example().unwrap();
}

#[test]
fn batch_admission_runs() {
    batch_admission::run_example().unwrap();
}

#[test]
fn interval_coloring_runs() {
    interval_coloring::run_example().unwrap();
}

#[test]
fn tree_queries_runs() {
    tree_queries::run_example().unwrap();
}

#[test]
fn revenue_path_runs() {
    revenue_path::run_example().unwrap();
}

#[test]
fn mobile_dissemination_runs() {
    mobile_dissemination::run_example().unwrap();
}

#[test]
fn sensor_round_trip_runs() {
    sensor_round_trip::run_example().unwrap();
}

#[test]
fn permutation_counts_runs() {
    permutation_counts::run_example().unwrap();
}

#[test]
fn trace_replay_runs() {
    trace_replay::run_example().unwrap();
}

#[test]
fn cli_session_runs() {
    cli_session::run_example().unwrap();
}
