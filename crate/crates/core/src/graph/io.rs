use super::{Graph, GraphError, NodeId};
use crate::weight::Weight;

/// Parses the `u v w` edge-list format.
///
/// Blank lines and everything after `#` are ignored. Node ids must cover
/// `0..n` without gaps (a gap is an isolated, hence unreachable, node).
/// Weights are decimals with at most `precision` fractional digits.
pub fn load_edge_list(text: &str, precision: u32) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    let mut max_id: Option<NodeId> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(GraphError::Parse {
                line,
                message: format!("expected `u v w`, found {} field(s)", fields.len()),
            });
        }
        let parse_id = |s: &str| {
            s.parse::<NodeId>().map_err(|_| GraphError::Parse {
                line,
                message: format!("`{s}` is not a node id"),
            })
        };
        let u = parse_id(fields[0])?;
        let v = parse_id(fields[1])?;
        let w = Weight::parse_decimal(fields[2], precision)
            .map_err(|source| GraphError::BadWeight { line, source })?;
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v, w));
    }
    let n = max_id.map_or(0, |m| m + 1);
    Graph::from_edges(n, edges, precision)
}

/// Renders a graph in the format read by [`load_edge_list`].
pub fn write_edge_list(graph: &Graph) -> String {
    let mut out = format!(
        "# nodes={} edges={} precision={}\n",
        graph.node_count(),
        graph.edge_count(),
        graph.precision()
    );
    for (u, v, w) in graph.edges() {
        out.push_str(&format!("{u} {v} {}\n", w.to_decimal_string(graph.precision())));
    }
    out
}
