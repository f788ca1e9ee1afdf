//! Motion file formats.
//!
//! * motion-JSON: `{"fps": 60, "joints": [24 names], "frames": [[[x,y,z] x 24] x F],
//!   "contacts": [[0|1 x 4] x F]}` with `contacts` optional.
//! * motion-BIN: `b"MSMP"`, `u32` version (1), `u32` F, `u32` J, `f64` fps, then
//!   F*J*3 `f64` positions; optionally followed by a `u8` contact flag and
//!   F*4 contact bytes. All integers and floats are little-endian.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{MotionError, Result};
use crate::motion::{Contact, MotionSequence};
use crate::skeleton::{JOINT_COUNT, JOINT_NAMES};
use crate::vec3::Vec3;

pub const BIN_MAGIC: &[u8; 4] = b"MSMP";
pub const BIN_VERSION: u32 = 1;
pub const BIN_HEADER_LEN: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MotionFormat {
    Json,
    Bin,
}

impl MotionFormat {
    /// Guess the format from a file extension; anything but `.bin` is JSON.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("bin") => MotionFormat::Bin,
            _ => MotionFormat::Json,
        }
    }
}

impl FromStr for MotionFormat {
    type Err = MotionError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(MotionFormat::Json),
            "bin" => Ok(MotionFormat::Bin),
            other => Err(MotionError::InvalidParameter(format!("unknown motion format {other:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MotionJson {
    fps: f64,
    joints: Vec<String>,
    frames: Vec<Vec<Vec3>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    contacts: Option<Vec<Contact>>,
}

/// Load a motion file, choosing the decoder from the leading magic bytes.
pub fn load_motion(path: impl AsRef<Path>) -> Result<MotionSequence> {
    let bytes = fs::read(path)?;
    if bytes.starts_with(BIN_MAGIC) {
        decode_bin(&bytes)
    } else {
        let text = std::str::from_utf8(&bytes).map_err(|e| MotionError::Parse(e.to_string()))?;
        from_json_str(text)
    }
}

pub fn save_motion(seq: &MotionSequence, path: impl AsRef<Path>, format: MotionFormat) -> Result<()> {
    let bytes = match format {
        MotionFormat::Json => to_json_string(seq).into_bytes(),
        MotionFormat::Bin => encode_bin(seq),
    };
    fs::write(path, bytes)?;
    Ok(())
}

pub fn from_json_str(text: &str) -> Result<MotionSequence> {
    let doc: MotionJson = serde_json::from_str(text).map_err(|e| MotionError::Parse(e.to_string()))?;
    if doc.joints.len() != JOINT_COUNT {
        return Err(MotionError::Shape(format!(
            "expected {JOINT_COUNT} joint names, got {}",
            doc.joints.len()
        )));
    }
    if let Some((i, name)) = doc.joints.iter().enumerate().find(|(i, n)| n.as_str() != JOINT_NAMES[*i]) {
        return Err(MotionError::Shape(format!(
            "joint {i} is {name:?}, expected {:?} (SMPL-24 order)",
            JOINT_NAMES[i]
        )));
    }
    MotionSequence::new(doc.frames, doc.fps, doc.contacts)
}

pub fn to_json_value(seq: &MotionSequence) -> serde_json::Value {
    serde_json::to_value(as_doc(seq)).expect("motion serializes")
}

pub fn to_json_string(seq: &MotionSequence) -> String {
    serde_json::to_string(&as_doc(seq)).expect("motion serializes")
}

fn as_doc(seq: &MotionSequence) -> MotionJson {
    MotionJson {
        fps: seq.fps(),
        joints: JOINT_NAMES.iter().map(|s| s.to_string()).collect(),
        frames: seq.to_frames(),
        contacts: seq.contacts().map(|c| c.to_vec()),
    }
}

pub fn encode_bin(seq: &MotionSequence) -> Vec<u8> {
    let f = seq.frames();
    let mut out = Vec::with_capacity(BIN_HEADER_LEN + f * JOINT_COUNT * 24 + 1 + f * 4);
    out.extend_from_slice(BIN_MAGIC);
    out.extend_from_slice(&BIN_VERSION.to_le_bytes());
    out.extend_from_slice(&(f as u32).to_le_bytes());
    out.extend_from_slice(&(JOINT_COUNT as u32).to_le_bytes());
    out.extend_from_slice(&seq.fps().to_le_bytes());
    for p in seq.positions() {
        for c in p {
            out.extend_from_slice(&c.to_le_bytes());
        }
    }
    if let Some(contacts) = seq.contacts() {
        out.push(1);
        for row in contacts {
            out.extend_from_slice(row);
        }
    }
    out
}

pub fn decode_bin(bytes: &[u8]) -> Result<MotionSequence> {
    let mut r = Reader { bytes, at: 0 };
    if r.take(4)? != BIN_MAGIC {
        return Err(MotionError::Parse("missing MSMP magic".into()));
    }
    let version = r.u32()?;
    if version != BIN_VERSION {
        return Err(MotionError::Parse(format!("unsupported version {version}")));
    }
    let frames = r.u32()? as usize;
    let joints = r.u32()? as usize;
    let fps = r.f64()?;
    if joints != JOINT_COUNT {
        return Err(MotionError::Shape(format!("expected {JOINT_COUNT} joints, got {joints}")));
    }
    let mut positions = Vec::with_capacity(frames * joints);
    for _ in 0..frames * joints {
        positions.push([r.f64()?, r.f64()?, r.f64()?]);
    }
    let contacts = if r.at == bytes.len() {
        None
    } else {
        match r.take(1)?[0] {
            0 => None,
            1 => {
                let raw = r.take(frames * 4)?;
                Some(raw.chunks_exact(4).map(|c| [c[0], c[1], c[2], c[3]]).collect())
            }
            flag => return Err(MotionError::Parse(format!("bad contact flag {flag}"))),
        }
    };
    if r.at != bytes.len() {
        return Err(MotionError::Parse(format!("{} trailing bytes", bytes.len() - r.at)));
    }
    MotionSequence::from_flat(positions, frames, fps, contacts)
}

struct Reader<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.at.checked_add(n).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| MotionError::Parse("unexpected end of file".into()))?;
        let s = &self.bytes[self.at..end];
        self.at = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names() -> Vec<String> {
        JOINT_NAMES.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn minimal_zero_json() {
        let doc = serde_json::json!({
            "fps": 30.0,
            "joints": names(),
            "frames": vec![vec![[0.0, 0.0, 0.0]; 24]; 2],
        });
        let seq = from_json_str(&doc.to_string()).unwrap();
        assert_eq!(seq.frames(), 2);
        assert!(seq.positions().iter().all(|p| *p == [0.0; 3]));
        assert!(seq.contacts().is_none());
    }

    #[test]
    fn json_with_23_joints_is_shape_error() {
        let mut n = names();
        n.pop();
        let doc = serde_json::json!({
            "fps": 30.0,
            "joints": n,
            "frames": vec![vec![[0.0, 0.0, 0.0]; 23]; 2],
        });
        assert!(matches!(from_json_str(&doc.to_string()), Err(MotionError::Shape(_))));
    }

    #[test]
    fn malformed_json_is_parse_error() {
        assert!(matches!(from_json_str("{\"fps\": "), Err(MotionError::Parse(_))));
    }

    #[test]
    fn bin_size_matches_layout() {
        let seq = fixtures::random_dance(1, 100, 60.0);
        assert_eq!(encode_bin(&seq).len(), BIN_HEADER_LEN + 100 * 24 * 3 * 8);
        let with = seq.clone().with_contacts(Some(vec![[1, 0, 1, 0]; 100])).unwrap();
        assert_eq!(encode_bin(&with).len(), BIN_HEADER_LEN + 100 * 24 * 3 * 8 + 1 + 400);
    }

    #[test]
    fn truncated_bin_is_parse_error() {
        let seq = fixtures::static_pose(4, 60.0);
        let bytes = encode_bin(&seq);
        assert!(matches!(decode_bin(&bytes[..bytes.len() - 3]), Err(MotionError::Parse(_))));
    }

    #[test]
    fn unwritable_path_is_io_error() {
        let seq = fixtures::static_pose(4, 60.0);
        let err = save_motion(&seq, "/nonexistent-dir/x/y.json", MotionFormat::Json).unwrap_err();
        assert!(matches!(err, MotionError::Io(_)));
    }

    #[test]
    fn contacts_round_trip_through_both_formats() {
        let seq = fixtures::walker(7, 90, 60.0, 0.3);
        assert!(seq.contacts().is_some());
        assert_eq!(decode_bin(&encode_bin(&seq)).unwrap(), seq);
        assert_eq!(from_json_str(&to_json_string(&seq)).unwrap(), seq);
    }
}
