use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

/// Tri-state edge colouring keyed by the owning graph's canonical edge index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    states: Vec<Option<Color>>,
}

impl Coloring {
    pub fn uncolored(g: &Graph) -> Self {
        Self { states: vec![None; g.edge_count()] }
    }

    pub fn uniform(g: &Graph, color: Color) -> Self {
        Self { states: vec![Some(color); g.edge_count()] }
    }

    pub fn from_states(states: Vec<Option<Color>>) -> Self {
        Self { states }
    }

    /// Total colouring with the listed edges red and every other edge blue.
    pub fn from_red_edges(g: &Graph, red: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut c = Self::uniform(g, Color::Blue);
        for (u, v) in red {
            let i = g.edge_index(u, v).ok_or(Error::MissingEdge(u, v))?;
            c.states[i] = Some(Color::Red);
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    #[inline]
    pub fn get(&self, edge: usize) -> Option<Color> {
        self.states[edge]
    }

    #[inline]
    pub fn set(&mut self, edge: usize, color: Option<Color>) {
        self.states[edge] = color;
    }

    pub fn set_pair(&mut self, g: &Graph, u: usize, v: usize, color: Option<Color>) -> Result<()> {
        let i = g.edge_index(u, v).ok_or(Error::MissingEdge(u, v))?;
        self.states[i] = color;
        Ok(())
    }

    pub fn states(&self) -> &[Option<Color>] {
        &self.states
    }

    pub fn check_domain(&self, g: &Graph) -> Result<()> {
        if self.states.len() == g.edge_count() {
            Ok(())
        } else {
            Err(Error::ColoringDomain { expected: g.edge_count(), got: self.states.len() })
        }
    }

    pub fn is_total(&self) -> bool {
        self.states.iter().all(Option::is_some)
    }

    pub fn uncolored_count(&self) -> usize {
        self.states.iter().filter(|s| s.is_none()).count()
    }

    pub fn count(&self, color: Color) -> usize {
        self.states.iter().filter(|&&s| s == Some(color)).count()
    }

    /// Edges of `color` as canonical pairs.
    pub fn edges_of<'a>(&'a self, g: &'a Graph, color: Color) -> impl Iterator<Item = (usize, usize)> + 'a {
        self.states.iter().enumerate().filter(move |(_, &s)| s == Some(color)).map(move |(i, _)| g.edge(i))
    }

    /// Spanning subgraph formed by the edges of `color`.
    pub fn color_graph(&self, g: &Graph, color: Color) -> Graph {
        g.edge_subgraph(|i| self.states[i] == Some(color))
    }

    /// Red and blue exchanged.
    pub fn swapped(&self) -> Coloring {
        Coloring { states: self.states.iter().map(|s| s.map(Color::other)).collect() }
    }

    /// Checks that `self` is a total extension of `frozen`.
    pub fn check_extends(&self, g: &Graph, frozen: &Coloring) -> Result<()> {
        self.check_domain(g)?;
        frozen.check_domain(g)?;
        for (i, (s, f)) in self.states.iter().zip(&frozen.states).enumerate() {
            let (u, v) = g.edge(i);
            match (s, f) {
                (None, _) => return Err(Error::Incomplete { u, v }),
                (Some(a), Some(b)) if a != b => return Err(Error::FrozenContradiction { u, v }),
                _ => {}
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn red_edges_and_swap() {
        let g = Graph::cycle(5).unwrap();
        let c = Coloring::from_red_edges(&g, [(0, 1), (3, 2)]).unwrap();
        assert_eq!(c.count(Color::Red), 2);
        assert_eq!(c.swapped().count(Color::Red), 3);
        assert!(Coloring::from_red_edges(&g, [(0, 2)]).is_err());
        let red = c.color_graph(&g, Color::Red);
        assert!(red.has_edge(2, 3) && !red.has_edge(1, 2));
    }

    #[test]
    fn extension_checks() {
        let g = Graph::path(3).unwrap();
        let mut frozen = Coloring::uncolored(&g);
        frozen.set(0, Some(Color::Blue));
        let total = Coloring::uniform(&g, Color::Red);
        assert!(matches!(total.check_extends(&g, &frozen), Err(Error::FrozenContradiction { .. })));
        let partial = Coloring::uncolored(&g);
        assert!(matches!(partial.check_extends(&g, &frozen), Err(Error::Incomplete { .. })));
        let ok = Coloring::uniform(&g, Color::Blue);
        assert!(ok.check_extends(&g, &frozen).is_ok());
    }
}
