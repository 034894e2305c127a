use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cliffstab::{vertex_set, StabilizerVertexSet};
use crate::error::{Error, Result};

/// The registers covered by the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum System {
    Qubit1,
    Qutrit1,
    Qubit2,
    Qubit3,
}

impl System {
    pub const ALL: [System; 4] = [System::Qubit1, System::Qutrit1, System::Qubit2, System::Qubit3];

    pub fn new(d: u32, n: usize) -> Result<Self> {
        match (d, n) {
            (2, 1) => Ok(System::Qubit1),
            (3, 1) => Ok(System::Qutrit1),
            (2, 2) => Ok(System::Qubit2),
            (2, 3) => Ok(System::Qubit3),
            _ => Err(Error::Unsupported(format!("system d={d}, n={n}"))),
        }
    }

    /// System whose Hilbert space has the given dimension.
    pub fn from_dim(dim: usize) -> Result<Self> {
        match dim {
            2 => Ok(System::Qubit1),
            3 => Ok(System::Qutrit1),
            4 => Ok(System::Qubit2),
            8 => Ok(System::Qubit3),
            _ => Err(Error::Unsupported(format!("Hilbert space dimension {dim}"))),
        }
    }

    pub fn d(self) -> u32 {
        match self {
            System::Qutrit1 => 3,
            _ => 2,
        }
    }

    pub fn n(self) -> usize {
        match self {
            System::Qubit1 | System::Qutrit1 => 1,
            System::Qubit2 => 2,
            System::Qubit3 => 3,
        }
    }

    pub fn dim(self) -> usize {
        (self.d() as usize).pow(self.n() as u32)
    }

    pub fn is_qubit(self) -> bool {
        self.d() == 2
    }

    /// Cached stabilizer states.
    pub fn vertices(self) -> Result<&'static StabilizerVertexSet> {
        vertex_set(self.d(), self.n())
    }

    pub fn vertex_count(self) -> usize {
        match self {
            System::Qubit1 => 6,
            System::Qutrit1 => 12,
            System::Qubit2 => 60,
            System::Qubit3 => 1080,
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.d(), self.n())
    }
}

impl FromStr for System {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (d, n) = s
            .split_once(',')
            .ok_or_else(|| Error::InvalidLabel(format!("system '{s}' should look like d,n")))?;
        let d = d.trim().parse().map_err(|_| Error::InvalidLabel(format!("bad d in '{s}'")))?;
        let n = n.trim().parse().map_err(|_| Error::InvalidLabel(format!("bad n in '{s}'")))?;
        System::new(d, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for s in System::ALL {
            assert_eq!(s.to_string().parse::<System>().unwrap(), s);
            assert_eq!(System::from_dim(s.dim()).unwrap(), s);
        }
        assert!("5,1".parse::<System>().is_err());
        assert!("2".parse::<System>().is_err());
    }
}
