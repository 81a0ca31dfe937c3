//! Toroidal symbol arrays and their canonical text format.
//!
//! The interchange format is a single header line
//! `DBMAP M=<M> N=<N> m=<m> n=<n> k=<k>` followed by `M` lines of `N`
//! symbol characters (the 0-9 A-Z a-z ramp, so k <= 62), each terminated
//! by one newline and free of trailing whitespace.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::patterns2d::Pattern;
use crate::words::Alphabet;

/// An `(M, N)` cyclic symbol array with a claimed window shape `(m, n)`.
/// All row and column indices wrap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicMap {
    height: usize,
    width: usize,
    cells: Vec<u8>,
    k: usize,
    win_rows: usize,
    win_cols: usize,
}

impl CyclicMap {
    pub fn new(
        height: usize,
        width: usize,
        cells: Vec<u8>,
        k: usize,
        window: (usize, usize),
    ) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::InvalidArgument("map dimensions must be >= 1".into()));
        }
        if window.0 == 0 || window.1 == 0 {
            return Err(Error::InvalidArgument("window shape must be >= 1".into()));
        }
        if cells.len() != height * width {
            return Err(Error::InvalidArgument(format!(
                "expected {} cells, got {}",
                height * width,
                cells.len()
            )));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("alphabet size must be >= 1".into()));
        }
        if let Some(&bad) = cells.iter().find(|&&c| c as usize >= k) {
            return Err(Error::InvalidArgument(format!(
                "cell {bad} out of range for alphabet of size {k}"
            )));
        }
        Ok(CyclicMap {
            height,
            width,
            cells,
            k,
            win_rows: window.0,
            win_cols: window.1,
        })
    }

    pub fn from_columns(
        columns: &[Vec<u8>],
        k: usize,
        window: (usize, usize),
    ) -> Result<Self> {
        let width = columns.len();
        let height = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != height) {
            return Err(Error::InvalidArgument("ragged columns".into()));
        }
        let mut cells = vec![0u8; height * width];
        for (c, col) in columns.iter().enumerate() {
            for (r, &v) in col.iter().enumerate() {
                cells[r * width + c] = v;
            }
        }
        CyclicMap::new(height, width, cells, k, window)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    /// Claimed window shape `(m, n)`.
    pub fn window(&self) -> (usize, usize) {
        (self.win_rows, self.win_cols)
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    /// Toroidal cell read; any `r`, `c` wrap modulo the dimensions.
    pub fn at(&self, r: usize, c: usize) -> u8 {
        self.cells[(r % self.height) * self.width + (c % self.width)]
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.height).map(|r| self.at(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u8>> {
        (0..self.width).map(|c| self.column(c)).collect()
    }

    /// Writes the `wm x wn` cyclic window anchored at `(r, c)` into `buf`.
    pub fn window_cells(&self, r: usize, c: usize, wm: usize, wn: usize, buf: &mut Vec<u8>) {
        buf.clear();
        for dr in 0..wm {
            for dc in 0..wn {
                buf.push(self.at(r + dr, c + dc));
            }
        }
    }

    /// The window at `(r, c)` as a [`Pattern`] with this map's claimed
    /// window shape.
    pub fn window_pattern(&self, r: usize, c: usize) -> Pattern {
        let mut buf = Vec::with_capacity(self.win_rows * self.win_cols);
        self.window_cells(r, c, self.win_rows, self.win_cols, &mut buf);
        Pattern::new(
            self.win_rows,
            self.win_cols,
            buf,
            Alphabet::new(self.k).expect("valid map alphabet"),
        )
        .expect("window cells are in range")
    }

    /// The toroidal translate moving `(dr, dc)` to the origin.
    pub fn translate(&self, dr: usize, dc: usize) -> CyclicMap {
        let mut cells = Vec::with_capacity(self.cells.len());
        for r in 0..self.height {
            for c in 0..self.width {
                cells.push(self.at(r + dr, c + dc));
            }
        }
        CyclicMap {
            cells,
            ..self.clone()
        }
    }

    /// Renders the map in the canonical text format. Fails for k > 62.
    pub fn to_dbmap_string(&self) -> Result<String> {
        if self.k > 62 {
            return Err(Error::InvalidArgument(format!(
                "alphabet size {} exceeds the 62-symbol text ramp",
                self.k
            )));
        }
        let mut out = String::with_capacity(self.cells.len() + self.height + 64);
        out.push_str(&format!(
            "DBMAP M={} N={} m={} n={} k={}\n",
            self.height, self.width, self.win_rows, self.win_cols, self.k
        ));
        for r in 0..self.height {
            for c in 0..self.width {
                out.push(Alphabet::symbol_char(self.at(r, c)).expect("cell below 62"));
            }
            out.push('\n');
        }
        Ok(out)
    }

    pub fn from_dbmap_str(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty map file".into()))?;
        let fields = parse_header(header)?;
        let (height, width, wm, wn, k) = fields;
        let mut cells = Vec::with_capacity(height * width);
        for r in 0..height {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing row {r}")))?;
            if line.chars().count() != width {
                return Err(Error::Parse(format!(
                    "row {r} has {} characters, expected {width}",
                    line.chars().count()
                )));
            }
            for ch in line.chars() {
                let v = Alphabet::symbol_value(ch)
                    .ok_or_else(|| Error::Parse(format!("bad symbol {ch:?} in row {r}")))?;
                cells.push(v);
            }
        }
        if lines.any(|l| !l.is_empty()) {
            return Err(Error::Parse("trailing content after map rows".into()));
        }
        CyclicMap::new(height, width, cells, k, (wm, wn))
    }

    pub fn write_dbmap(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_dbmap_string()?)?;
        Ok(())
    }

    pub fn read_dbmap(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        CyclicMap::from_dbmap_str(&text)
    }
}

fn parse_header(header: &str) -> Result<(usize, usize, usize, usize, usize)> {
    let mut parts = header.split_whitespace();
    if parts.next() != Some("DBMAP") {
        return Err(Error::Parse("header must start with DBMAP".into()));
    }
    let mut fields = [None::<usize>; 5];
    const NAMES: [&str; 5] = ["M", "N", "m", "n", "k"];
    for part in parts {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad header field {part:?}")))?;
        let idx = NAMES
            .iter()
            .position(|&n| n == name)
            .ok_or_else(|| Error::Parse(format!("unknown header field {name:?}")))?;
        let parsed = value
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad value for {name}: {value:?}")))?;
        if fields[idx].replace(parsed).is_some() {
            return Err(Error::Parse(format!("duplicate header field {name}")));
        }
    }
    let get = |i: usize| {
        fields[i].ok_or_else(|| Error::Parse(format!("missing header field {}", NAMES[i])))
    };
    Ok((get(0)?, get(1)?, get(2)?, get(3)?, get(4)?))
}
