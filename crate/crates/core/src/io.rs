//! Binary artifacts: graph cache (`CPGR`), ordered edge list (`CPEO`) and
//! partition assignment (`CPAS`). All integers little-endian.

use std::io::{self, BufRead, Read, Write};

use crate::error::{Error, Result};
use crate::graph::{parse_edge_list, Graph, VertexId};
use crate::ordering::Ordering;
use crate::partitioners::Assignment;

pub const GRAPH_MAGIC: [u8; 4] = *b"CPGR";
pub const ORDERED_MAGIC: [u8; 4] = *b"CPEO";
pub const ASSIGNMENT_MAGIC: [u8; 4] = *b"CPAS";
pub const FORMAT_VERSION: u16 = 1;

/// What a file starts with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Graph,
    Ordered,
    Assignment,
    /// Anything else; treated as a text edge list.
    Text,
}

pub fn detect_kind(head: &[u8]) -> FileKind {
    match head.get(..4) {
        Some(m) if m == GRAPH_MAGIC => FileKind::Graph,
        Some(m) if m == ORDERED_MAGIC => FileKind::Ordered,
        Some(m) if m == ASSIGNMENT_MAGIC => FileKind::Assignment,
        _ => FileKind::Text,
    }
}

fn read_u16<R: Read>(r: &mut R) -> io::Result<u16> {
    let mut b = [0; 2];
    r.read_exact(&mut b)?;
    Ok(u16::from_le_bytes(b))
}

fn read_u32<R: Read>(r: &mut R) -> io::Result<u32> {
    let mut b = [0; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64<R: Read>(r: &mut R) -> io::Result<u64> {
    let mut b = [0; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn truncated(e: io::Error) -> Error {
    if e.kind() == io::ErrorKind::UnexpectedEof {
        Error::Format("file is truncated".into())
    } else {
        Error::Io(e)
    }
}

fn expect_magic<R: Read>(r: &mut R, magic: [u8; 4]) -> Result<()> {
    let mut got = [0; 4];
    r.read_exact(&mut got).map_err(truncated)?;
    if got != magic {
        return Err(Error::Format(format!(
            "bad magic {:?}, expected {:?}",
            String::from_utf8_lossy(&got),
            String::from_utf8_lossy(&magic)
        )));
    }
    Ok(())
}

fn write_pairs<W: Write>(mut w: W, magic: [u8; 4], vertices: usize, edges: impl ExactSizeIterator<Item = (VertexId, VertexId)>) -> Result<()> {
    w.write_all(&magic)?;
    w.write_all(&FORMAT_VERSION.to_le_bytes())?;
    w.write_all(&(vertices as u64).to_le_bytes())?;
    w.write_all(&(edges.len() as u64).to_le_bytes())?;
    for (a, b) in edges {
        w.write_all(&a.0.to_le_bytes())?;
        w.write_all(&b.0.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a pair-list file and rebuilds the graph; the pairs come back in
/// file order.
fn read_pairs<R: Read>(mut r: R, magic: [u8; 4]) -> Result<(Graph, Vec<(u64, u64)>)> {
    expect_magic(&mut r, magic)?;
    let version = read_u16(&mut r).map_err(truncated)?;
    if version != FORMAT_VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let vertices = read_u64(&mut r).map_err(truncated)?;
    let edges = read_u64(&mut r).map_err(truncated)?;
    let mut pairs = Vec::with_capacity(edges.min(1 << 24) as usize);
    for _ in 0..edges {
        let a = read_u64(&mut r).map_err(truncated)?;
        let b = read_u64(&mut r).map_err(truncated)?;
        if a >= b || b >= vertices {
            return Err(Error::Format(format!("record ({a}, {b}) is not a canonical edge on {vertices} vertices")));
        }
        pairs.push((a, b));
    }
    let graph = Graph::canonicalize(&pairs);
    if graph.edge_count() as u64 != edges || graph.vertex_count() as u64 != vertices {
        return Err(Error::Format(format!(
            "header says {vertices} vertices / {edges} edges, records give {} / {}",
            graph.vertex_count(),
            graph.edge_count()
        )));
    }
    Ok((graph, pairs))
}

pub fn write_graph<W: Write>(w: W, graph: &Graph) -> Result<()> {
    write_pairs(w, GRAPH_MAGIC, graph.vertex_count(), graph.edges().iter().map(|e| (e.a, e.b)))
}

pub fn read_graph<R: Read>(r: R) -> Result<Graph> {
    Ok(read_pairs(r, GRAPH_MAGIC)?.0)
}

pub fn write_ordered<W: Write>(w: W, graph: &Graph, ordering: &Ordering) -> Result<()> {
    if ordering.len() != graph.edge_count() {
        return Err(Error::Domain("ordering length differs from edge count".into()));
    }
    write_pairs(w, ORDERED_MAGIC, graph.vertex_count(), ordering.ordered_edges(graph).map(|e| (e.a, e.b)))
}

pub fn read_ordered<R: Read>(r: R) -> Result<(Graph, Ordering)> {
    let (graph, pairs) = read_pairs(r, ORDERED_MAGIC)?;
    let permutation = pairs
        .iter()
        .map(|&(a, b)| graph.find_edge(VertexId(a), VertexId(b)).expect("edge read above"))
        .collect();
    let ordering = Ordering::from_permutation(permutation).map_err(|_| Error::Format("repeated edge record".into()))?;
    Ok((graph, ordering))
}

pub fn write_assignment<W: Write>(mut w: W, assignment: &Assignment) -> Result<()> {
    w.write_all(&ASSIGNMENT_MAGIC)?;
    w.write_all(&assignment.k().to_le_bytes())?;
    w.write_all(&(assignment.len() as u64).to_le_bytes())?;
    for &p in assignment.part_of() {
        w.write_all(&p.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_assignment<R: Read>(mut r: R) -> Result<Assignment> {
    expect_magic(&mut r, ASSIGNMENT_MAGIC)?;
    let k = read_u32(&mut r).map_err(truncated)?;
    let n = read_u64(&mut r).map_err(truncated)?;
    let mut parts = Vec::with_capacity(n.min(1 << 24) as usize);
    for _ in 0..n {
        parts.push(read_u32(&mut r).map_err(truncated)?);
    }
    Assignment::new(k, parts).map_err(|e| Error::Format(e.to_string()))
}

/// Text edge list in the graph's dense ids, one `a b` pair per line.
pub fn write_edge_list<W: Write>(mut w: W, pairs: &[(u64, u64)]) -> Result<()> {
    for (a, b) in pairs {
        writeln!(w, "{a} {b}")?;
    }
    w.flush()?;
    Ok(())
}

/// Loads either a `CPGR` cache or a text edge list.
pub fn read_any_graph<R: BufRead>(mut r: R) -> Result<Graph> {
    let head = r.fill_buf()?;
    match detect_kind(head) {
        FileKind::Graph => read_graph(r),
        FileKind::Text => Ok(Graph::canonicalize(&parse_edge_list(r)?)),
        kind => Err(Error::Format(format!("expected a graph, found {kind:?} file"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphgen::gen_er;
    use crate::ordering::{order_trivial, TrivialStrategy};

    fn sample() -> Graph {
        Graph::canonicalize(&gen_er(40, 120, 6).unwrap())
    }

    #[test]
    fn graph_round_trip() {
        let g = sample();
        let mut buf = Vec::new();
        write_graph(&mut buf, &g).unwrap();
        assert_eq!(&buf[..4], b"CPGR");
        assert_eq!(buf.len(), 4 + 2 + 8 + 8 + 16 * g.edge_count());
        assert_eq!(read_graph(&buf[..]).unwrap().edges(), g.edges());
        assert_eq!(read_any_graph(&buf[..]).unwrap().edges(), g.edges());
    }

    #[test]
    fn ordered_round_trip() {
        let g = sample();
        let o = order_trivial(&g, TrivialStrategy::RandomShuffle, 4);
        let mut buf = Vec::new();
        write_ordered(&mut buf, &g, &o).unwrap();
        let (g2, o2) = read_ordered(&buf[..]).unwrap();
        assert_eq!(g2.edges(), g.edges());
        assert_eq!(o2, o);
    }

    #[test]
    fn triangle_layout() {
        let g = Graph::canonicalize(&[(0, 1), (1, 2), (0, 2)]);
        let o = Ordering::from_permutation(vec![2, 0, 1]).unwrap();
        let mut buf = Vec::new();
        write_ordered(&mut buf, &g, &o).unwrap();
        assert_eq!(&buf[4..6], &[1, 0]);
        assert_eq!(u64::from_le_bytes(buf[6..14].try_into().unwrap()), 3);
        assert_eq!(u64::from_le_bytes(buf[14..22].try_into().unwrap()), 3);
        // first record is edge 2 = (1, 2)
        assert_eq!(u64::from_le_bytes(buf[22..30].try_into().unwrap()), 1);
        assert_eq!(u64::from_le_bytes(buf[30..38].try_into().unwrap()), 2);
    }

    #[test]
    fn assignment_round_trip() {
        let a = Assignment::new(5, vec![0, 4, 2, 2, 1]).unwrap();
        let mut buf = Vec::new();
        write_assignment(&mut buf, &a).unwrap();
        assert_eq!(buf.len(), 4 + 4 + 8 + 4 * 5);
        assert_eq!(read_assignment(&buf[..]).unwrap(), a);
    }

    #[test]
    fn corrupt_inputs() {
        let g = sample();
        let mut buf = Vec::new();
        write_graph(&mut buf, &g).unwrap();
        assert!(matches!(read_ordered(&buf[..]), Err(Error::Format(_))));
        let mut bad = buf.clone();
        bad[4] = 9;
        assert!(matches!(read_graph(&bad[..]), Err(Error::Format(_))));
        assert!(matches!(read_graph(&buf[..buf.len() - 3]), Err(Error::Format(_))));
        let mut swapped = buf.clone();
        swapped[22..30].copy_from_slice(&1000u64.to_le_bytes());
        assert!(matches!(read_graph(&swapped[..]), Err(Error::Format(_))));
        let mut lying = buf.clone();
        lying[6..14].copy_from_slice(&999u64.to_le_bytes());
        assert!(matches!(read_graph(&lying[..]), Err(Error::Format(_))));

        let a = Assignment::new(2, vec![0, 1]).unwrap();
        let mut buf = Vec::new();
        write_assignment(&mut buf, &a).unwrap();
        buf[16] = 7;
        assert!(matches!(read_assignment(&buf[..]), Err(Error::Format(_))));
    }

    #[test]
    fn detects_kinds() {
        assert_eq!(detect_kind(b"CPEO\x01\x00"), FileKind::Ordered);
        assert_eq!(detect_kind(b"CPAS"), FileKind::Assignment);
        assert_eq!(detect_kind(b"0 1\n"), FileKind::Text);
        assert_eq!(detect_kind(b""), FileKind::Text);
        let g = read_any_graph("# hi\n0 1\n1 2\n".as_bytes()).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn edge_list_text() {
        let mut out = Vec::new();
        write_edge_list(&mut out, &[(0, 1), (3, 2)]).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "0 1\n3 2\n");
    }
}
