//! Binary container format shared by every serialized artifact.
//!
//! Layout: magic `DBE1`, a one-byte artifact kind, a one-byte backend tag,
//! L and λ as big-endian u32, then kind-specific payload fields, each
//! length-prefixed (u32 big-endian). Hex armor for the directory manifest is
//! plain lowercase hex of these bytes.

use crate::error::{Error, Result};
use num_bigint::BigUint;

pub const MAGIC: &[u8; 4] = b"DBE1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArtifactKind {
    PublicParamsSs = 1,
    PublicParamsAd = 2,
    UserSecretKey = 3,
    UserPublicKey = 4,
    HeaderSs = 5,
    HeaderAd = 6,
    AdSecretKey = 7,
    AdPublicKey = 8,
}

impl ArtifactKind {
    pub fn from_tag(t: u8) -> Result<ArtifactKind> {
        Ok(match t {
            1 => ArtifactKind::PublicParamsSs,
            2 => ArtifactKind::PublicParamsAd,
            3 => ArtifactKind::UserSecretKey,
            4 => ArtifactKind::UserPublicKey,
            5 => ArtifactKind::HeaderSs,
            6 => ArtifactKind::HeaderAd,
            7 => ArtifactKind::AdSecretKey,
            8 => ArtifactKind::AdPublicKey,
            other => return Err(Error::MalformedEncoding(format!("artifact kind {other}"))),
        })
    }
}

#[derive(Debug, Default)]
pub struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    pub fn container(kind: ArtifactKind, backend_tag: u8, users: u32, lambda: u32) -> Writer {
        let mut w = Writer { buf: Vec::new() };
        w.buf.extend_from_slice(MAGIC);
        w.u8(kind as u8);
        w.u8(backend_tag);
        w.u32(users);
        w.u32(lambda);
        w
    }

    pub fn u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    pub fn u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_be_bytes());
    }

    pub fn lp(&mut self, bytes: &[u8]) {
        self.u32(bytes.len() as u32);
        self.buf.extend_from_slice(bytes);
    }

    pub fn uint(&mut self, v: &BigUint) {
        self.lp(&v.to_bytes_be());
    }

    pub fn finish(self) -> Vec<u8> {
        self.buf
    }
}

#[derive(Debug)]
pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct ContainerHeader {
    pub kind: ArtifactKind,
    pub backend_tag: u8,
    pub users: u32,
    pub lambda: u32,
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Reader<'a> {
        Reader { buf, pos: 0 }
    }

    pub fn container(buf: &'a [u8], expect: ArtifactKind) -> Result<(ContainerHeader, Reader<'a>)> {
        let mut r = Reader::new(buf);
        let magic = r.bytes(4)?;
        if magic != MAGIC {
            return Err(Error::MalformedEncoding("bad magic".into()));
        }
        let kind = ArtifactKind::from_tag(r.u8()?)?;
        if kind != expect {
            return Err(Error::MalformedEncoding(format!(
                "expected {expect:?}, found {kind:?}"
            )));
        }
        let backend_tag = r.u8()?;
        let users = r.u32()?;
        let lambda = r.u32()?;
        Ok((
            ContainerHeader {
                kind,
                backend_tag,
                users,
                lambda,
            },
            r,
        ))
    }

    /// Reads the header without pinning the expected kind (for dispatch).
    pub fn peek_kind(buf: &[u8]) -> Result<ArtifactKind> {
        if buf.len() < 5 || &buf[..4] != MAGIC {
            return Err(Error::MalformedEncoding("bad magic".into()));
        }
        ArtifactKind::from_tag(buf[4])
    }

    pub fn u8(&mut self) -> Result<u8> {
        let b = self.bytes(1)?;
        Ok(b[0])
    }

    pub fn u32(&mut self) -> Result<u32> {
        let b = self.bytes(4)?;
        Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
    }

    pub fn lp(&mut self) -> Result<&'a [u8]> {
        let len = self.u32()? as usize;
        self.bytes(len)
    }

    pub fn uint(&mut self) -> Result<BigUint> {
        Ok(BigUint::from_bytes_be(self.lp()?))
    }

    pub fn bytes(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.buf.len() {
            return Err(Error::MalformedEncoding("truncated input".into()));
        }
        let out = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    pub fn finish(&self) -> Result<()> {
        if self.pos == self.buf.len() {
            Ok(())
        } else {
            Err(Error::MalformedEncoding(format!(
                "{} trailing bytes",
                self.buf.len() - self.pos
            )))
        }
    }
}
