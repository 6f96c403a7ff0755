//! C ABI for the dbe toolkit.
//!
//! Conventions: every object crosses the boundary as an opaque handle
//! created by this library and released by the matching `_free` function;
//! every fallible call returns a [`DbeStatus`] and writes results through
//! out-pointers only on `DBE_STATUS_OK`; byte buffers returned by
//! `_serialize` calls are released with [`dbe_bytes_free`]. A textual detail
//! for the most recent error on the calling thread is available through
//! [`dbe_last_error_message`]. Seeds make operations deterministic; passing
//! a null seed draws from the platform entropy source.

use dbe::dbe_ad::{self, AdCiphertextHeader, AdKeyPair, AdPublicParams, AdUserPublicKey};
use dbe::dbe_ss::{self, CiphertextHeader, PublicParams, SessionKey, UserPublicKey, UserSecretKey};
use dbe::error::Error;
use dbe::groups::{Backend, GroupParams};
use dbe::rng::{entropy_rng, seeded_rng};
use rand_chacha::ChaCha20Rng;
use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DbeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BackendMismatch = 3,
    MalformedEncoding = 4,
    NotInSubgroup = 5,
    IndexOutOfRange = 6,
    EmptySet = 7,
    MissingKey = 8,
    InvalidKey = 9,
    MalformedKey = 10,
    LengthMismatch = 11,
    DuplicateIndex = 12,
    StrictInvalid = 13,
    MissingIndex = 14,
    UnvalidatedKey = 15,
    AlreadyExists = 16,
    BindingError = 17,
    NonDistinctInputs = 18,
    SearchExhausted = 19,
    Io = 20,
    /// Decapsulation by a non-member: the bottom outcome, not an error.
    Bottom = 21,
    Panic = 22,
}

/// Group backends.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DbeBackend {
    Curve = 0,
    Symbolic = 1,
}

impl From<DbeBackend> for Backend {
    fn from(b: DbeBackend) -> Backend {
        match b {
            DbeBackend::Curve => Backend::Curve,
            DbeBackend::Symbolic => Backend::Symbolic,
        }
    }
}

// Opaque handles.
pub struct DbeGroup(GroupParams);
pub struct DbeSsParams(PublicParams);
pub struct DbeSsSecretKey(UserSecretKey);
pub struct DbeSsPublicKey(UserPublicKey);
pub struct DbeSsHeader(CiphertextHeader);
pub struct DbeSessionKey(SessionKey);
pub struct DbeAdParams(AdPublicParams);
pub struct DbeAdKeyPair(AdKeyPair);
pub struct DbeAdPublicKey(AdUserPublicKey);
pub struct DbeAdHeader(AdCiphertextHeader);

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_last_error(msg: &str) {
    LAST_ERROR.with(|e| {
        let mut e = e.borrow_mut();
        e.clear();
        e.extend_from_slice(msg.as_bytes());
    });
}

fn status_of(err: &Error) -> DbeStatus {
    match err {
        Error::InvalidBits(_) | Error::InvalidParameter(_) => DbeStatus::InvalidArgument,
        Error::SearchExhausted(_) => DbeStatus::SearchExhausted,
        Error::BackendMismatch => DbeStatus::BackendMismatch,
        Error::MalformedEncoding(_) => DbeStatus::MalformedEncoding,
        Error::NotInSubgroup => DbeStatus::NotInSubgroup,
        Error::IndexOutOfRange { .. } => DbeStatus::IndexOutOfRange,
        Error::EmptySet => DbeStatus::EmptySet,
        Error::MissingUpk(_) => DbeStatus::MissingKey,
        Error::InvalidUpk(_) => DbeStatus::InvalidKey,
        Error::MalformedUpk(_) => DbeStatus::MalformedKey,
        Error::LengthMismatch(_) => DbeStatus::LengthMismatch,
        Error::DuplicateIndex(_) => DbeStatus::DuplicateIndex,
        Error::StrictModeInvalid(_) => DbeStatus::StrictInvalid,
        Error::MissingIndex(_) => DbeStatus::MissingIndex,
        Error::UnvalidatedKey(_) => DbeStatus::UnvalidatedKey,
        Error::AlreadyExists(_) => DbeStatus::AlreadyExists,
        Error::BindingError(_) => DbeStatus::BindingError,
        Error::NonDistinctInputs => DbeStatus::NonDistinctInputs,
        Error::Io(_) => DbeStatus::Io,
    }
}

fn fail(err: Error) -> DbeStatus {
    set_last_error(&err.to_string());
    status_of(&err)
}

fn null_arg() -> DbeStatus {
    set_last_error("null argument");
    DbeStatus::NullPointer
}

/// Runs a closure behind the unwinding boundary.
fn guarded<F: FnOnce() -> DbeStatus>(f: F) -> DbeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic");
            DbeStatus::Panic
        }
    }
}

unsafe fn rng_from(seed: *const u8, seed_len: usize) -> ChaCha20Rng {
    if seed.is_null() || seed_len == 0 {
        entropy_rng()
    } else {
        seeded_rng(std::slice::from_raw_parts(seed, seed_len))
    }
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> DbeStatus {
    if out.is_null() {
        return null_arg();
    }
    *out = Box::into_raw(Box::new(value));
    DbeStatus::Ok
}

unsafe fn put_bytes(out: *mut *mut u8, out_len: *mut usize, bytes: Vec<u8>) -> DbeStatus {
    if out.is_null() || out_len.is_null() {
        return null_arg();
    }
    let boxed = bytes.into_boxed_slice();
    *out_len = boxed.len();
    *out = Box::into_raw(boxed) as *mut u8;
    DbeStatus::Ok
}

unsafe fn free_handle<T>(ptr: *mut T) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

/// Copies the last error message for this thread into `buf` (truncated if
/// needed) and returns the full message length in bytes.
///
/// # Safety
/// `buf` must be null (to query the length) or point to `cap` writable
/// bytes.
#[no_mangle]
pub unsafe extern "C" fn dbe_last_error_message(buf: *mut u8, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        if !buf.is_null() && cap > 0 {
            let n = e.len().min(cap);
            std::ptr::copy_nonoverlapping(e.as_ptr(), buf, n);
        }
        e.len()
    })
}

/// Releases a byte buffer returned by a `_serialize` call.
///
/// # Safety
/// `(ptr, len)` must come from this library and be freed exactly once.
#[no_mangle]
pub unsafe extern "C" fn dbe_bytes_free(ptr: *mut u8, len: usize) {
    if !ptr.is_null() {
        drop(Box::from_raw(std::ptr::slice_from_raw_parts_mut(ptr, len)));
    }
}

// ---- group parameters ---------------------------------------------------------

/// Deterministically generates composite-order group parameters from a
/// nonempty seed.
///
/// # Safety
/// `seed` must point to `seed_len` readable bytes; `out` must be a valid
/// out-pointer.
#[no_mangle]
pub unsafe extern "C" fn dbe_group_generate(
    backend: DbeBackend,
    prime_bits: u32,
    seed: *const u8,
    seed_len: usize,
    out: *mut *mut DbeGroup,
) -> DbeStatus {
    guarded(|| unsafe {
        if seed.is_null() || seed_len == 0 {
            set_last_error("group generation requires a seed");
            return DbeStatus::InvalidArgument;
        }
        let seed = std::slice::from_raw_parts(seed, seed_len);
        match GroupParams::generate(backend.into(), prime_bits, seed) {
            Ok(g) => put(out, DbeGroup(g)),
            Err(e) => fail(e),
        }
    })
}

/// 1 when the parameters are toy-scale (which is always, at any width this
/// library will realistically generate).
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dbe_group_is_toy(group: *const DbeGroup) -> u8 {
    match group.as_ref() {
        Some(g) => u8::from(g.0.is_toy()),
        None => 1,
    }
}

/// # Safety
/// `ptr` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dbe_group_free(ptr: *mut DbeGroup) {
    free_handle(ptr);
}

// ---- basic (semi-static) scheme -------------------------------------------------

/// Runs the basic setup for `slots` users.
///
/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_setup(
    group: *const DbeGroup,
    slots: u32,
    lambda: u32,
    seed: *const u8,
    seed_len: usize,
    out: *mut *mut DbeSsParams,
) -> DbeStatus {
    guarded(|| unsafe {
        let group = match group.as_ref() {
            Some(g) => g,
            None => return null_arg(),
        };
        let mut rng = rng_from(seed, seed_len);
        match dbe_ss::setup(&mut rng, group.0.clone(), slots, lambda) {
            Ok(pp) => put(out, DbeSsParams(pp)),
            Err(e) => fail(e),
        }
    })
}

/// Number of key slots L.
///
/// # Safety
/// `pp` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_params_slots(pp: *const DbeSsParams) -> u32 {
    pp.as_ref().map_or(0, |p| p.0.slots())
}

/// Session-key length in bits.
///
/// # Safety
/// `pp` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_params_lambda(pp: *const DbeSsParams) -> u32 {
    pp.as_ref().map_or(0, |p| p.0.lambda())
}

/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_params_serialize(
    pp: *const DbeSsParams,
    out: *mut *mut u8,
    out_len: *mut usize,
) -> DbeStatus {
    guarded(|| unsafe {
        match pp.as_ref() {
            Some(pp) => put_bytes(out, out_len, pp.0.to_bytes()),
            None => null_arg(),
        }
    })
}

/// # Safety
/// `bytes` must point to `len` readable bytes; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_params_parse(
    bytes: *const u8,
    len: usize,
    out: *mut *mut DbeSsParams,
) -> DbeStatus {
    guarded(|| unsafe {
        if bytes.is_null() {
            return null_arg();
        }
        let data = std::slice::from_raw_parts(bytes, len);
        match PublicParams::from_bytes(data) {
            Ok(pp) => put(out, DbeSsParams(pp)),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `ptr` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_params_free(ptr: *mut DbeSsParams) {
    free_handle(ptr);
}

/// Generates the key pair for one slot.
///
/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_keygen(
    pp: *const DbeSsParams,
    index: u32,
    seed: *const u8,
    seed_len: usize,
    out_secret: *mut *mut DbeSsSecretKey,
    out_public: *mut *mut DbeSsPublicKey,
) -> DbeStatus {
    guarded(|| unsafe {
        let pp = match pp.as_ref() {
            Some(p) => p,
            None => return null_arg(),
        };
        let mut rng = rng_from(seed, seed_len);
        match dbe_ss::gen_key(&mut rng, index, &pp.0) {
            Ok((sk, pk)) => {
                let st = put(out_secret, DbeSsSecretKey(sk));
                if st != DbeStatus::Ok {
                    return st;
                }
                let st = put(out_public, DbeSsPublicKey(pk));
                if st != DbeStatus::Ok {
                    free_handle(*out_secret);
                    *out_secret = std::ptr::null_mut();
                }
                st
            }
            Err(e) => fail(e),
        }
    })
}

/// Writes the validation verdict through `out_valid` (1 accepted, 0
/// rejected); structural defects return an error status instead.
///
/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_is_valid(
    pp: *const DbeSsParams,
    index: u32,
    upk: *const DbeSsPublicKey,
    out_valid: *mut u8,
) -> DbeStatus {
    guarded(|| unsafe {
        let (pp, upk) = match (pp.as_ref(), upk.as_ref()) {
            (Some(p), Some(u)) => (p, u),
            _ => return null_arg(),
        };
        if out_valid.is_null() {
            return null_arg();
        }
        match dbe_ss::is_valid(index, &upk.0, &pp.0) {
            Ok(v) => {
                *out_valid = u8::from(v);
                DbeStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

unsafe fn collect_ss_upks(
    indices: *const u32,
    upks: *const *const DbeSsPublicKey,
    count: usize,
) -> Result<(BTreeSet<u32>, BTreeMap<u32, UserPublicKey>), DbeStatus> {
    if indices.is_null() || upks.is_null() {
        return Err(null_arg());
    }
    let indices = std::slice::from_raw_parts(indices, count);
    let upks = std::slice::from_raw_parts(upks, count);
    let mut set = BTreeSet::new();
    let mut map = BTreeMap::new();
    for (i, (&idx, &upk)) in indices.iter().zip(upks).enumerate() {
        let upk = match upk.as_ref() {
            Some(u) => u,
            None => {
                set_last_error(&format!("null public key at position {i}"));
                return Err(DbeStatus::NullPointer);
            }
        };
        set.insert(idx);
        map.insert(idx, upk.0.clone());
    }
    Ok((set, map))
}

/// Encapsulates to `indices[0..count]`, whose public keys are supplied in
/// the parallel `upks` array. Supplied keys are revalidated.
///
/// # Safety
/// Array and pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_encaps(
    pp: *const DbeSsParams,
    indices: *const u32,
    upks: *const *const DbeSsPublicKey,
    count: usize,
    seed: *const u8,
    seed_len: usize,
    out_header: *mut *mut DbeSsHeader,
    out_key: *mut *mut DbeSessionKey,
) -> DbeStatus {
    guarded(|| unsafe {
        let pp = match pp.as_ref() {
            Some(p) => p,
            None => return null_arg(),
        };
        let (set, map) = match collect_ss_upks(indices, upks, count) {
            Ok(x) => x,
            Err(st) => return st,
        };
        let mut rng = rng_from(seed, seed_len);
        match dbe_ss::encaps(&mut rng, &set, &map, &pp.0) {
            Ok((header, key)) => {
                let st = put(out_header, DbeSsHeader(header));
                if st != DbeStatus::Ok {
                    return st;
                }
                let st = put(out_key, DbeSessionKey(key));
                if st != DbeStatus::Ok {
                    free_handle(*out_header);
                    *out_header = std::ptr::null_mut();
                }
                st
            }
            Err(e) => fail(e),
        }
    })
}

/// Decapsulates; returns `DBE_STATUS_BOTTOM` when `index` is not in the
/// recipient set.
///
/// # Safety
/// Array and pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_decaps(
    pp: *const DbeSsParams,
    indices: *const u32,
    upks: *const *const DbeSsPublicKey,
    count: usize,
    header: *const DbeSsHeader,
    index: u32,
    secret: *const DbeSsSecretKey,
    out_key: *mut *mut DbeSessionKey,
) -> DbeStatus {
    guarded(|| unsafe {
        let (pp, header, secret) = match (pp.as_ref(), header.as_ref(), secret.as_ref()) {
            (Some(p), Some(h), Some(s)) => (p, h, s),
            _ => return null_arg(),
        };
        let (set, map) = match collect_ss_upks(indices, upks, count) {
            Ok(x) => x,
            Err(st) => return st,
        };
        match dbe_ss::decaps(&set, &header.0, index, &secret.0, &map, &pp.0) {
            Ok(Some(key)) => put(out_key, DbeSessionKey(key)),
            Ok(None) => {
                set_last_error("index not in the recipient set");
                DbeStatus::Bottom
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_secret_key_serialize(
    key: *const DbeSsSecretKey,
    pp: *const DbeSsParams,
    out: *mut *mut u8,
    out_len: *mut usize,
) -> DbeStatus {
    guarded(|| unsafe {
        match (key.as_ref(), pp.as_ref()) {
            (Some(k), Some(p)) => put_bytes(out, out_len, k.0.to_bytes(&p.0)),
            _ => null_arg(),
        }
    })
}

/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_secret_key_parse(
    bytes: *const u8,
    len: usize,
    pp: *const DbeSsParams,
    out: *mut *mut DbeSsSecretKey,
) -> DbeStatus {
    guarded(|| unsafe {
        let pp = match pp.as_ref() {
            Some(p) => p,
            None => return null_arg(),
        };
        if bytes.is_null() {
            return null_arg();
        }
        let data = std::slice::from_raw_parts(bytes, len);
        match UserSecretKey::from_bytes(data, &pp.0) {
            Ok(v) => put(out, DbeSsSecretKey(v)),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `ptr` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_secret_key_free(ptr: *mut DbeSsSecretKey) {
    free_handle(ptr);
}

/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_public_key_serialize(
    key: *const DbeSsPublicKey,
    pp: *const DbeSsParams,
    out: *mut *mut u8,
    out_len: *mut usize,
) -> DbeStatus {
    guarded(|| unsafe {
        match (key.as_ref(), pp.as_ref()) {
            (Some(k), Some(p)) => put_bytes(out, out_len, k.0.to_bytes(&p.0)),
            _ => null_arg(),
        }
    })
}

/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_public_key_parse(
    bytes: *const u8,
    len: usize,
    pp: *const DbeSsParams,
    out: *mut *mut DbeSsPublicKey,
) -> DbeStatus {
    guarded(|| unsafe {
        let pp = match pp.as_ref() {
            Some(p) => p,
            None => return null_arg(),
        };
        if bytes.is_null() {
            return null_arg();
        }
        let data = std::slice::from_raw_parts(bytes, len);
        match UserPublicKey::from_bytes(data, &pp.0) {
            Ok(v) => put(out, DbeSsPublicKey(v)),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `ptr` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_public_key_free(ptr: *mut DbeSsPublicKey) {
    free_handle(ptr);
}

/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_header_serialize(
    header: *const DbeSsHeader,
    pp: *const DbeSsParams,
    out: *mut *mut u8,
    out_len: *mut usize,
) -> DbeStatus {
    guarded(|| unsafe {
        match (header.as_ref(), pp.as_ref()) {
            (Some(h), Some(p)) => put_bytes(out, out_len, h.0.to_bytes(&p.0)),
            _ => null_arg(),
        }
    })
}

/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_header_parse(
    bytes: *const u8,
    len: usize,
    pp: *const DbeSsParams,
    out: *mut *mut DbeSsHeader,
) -> DbeStatus {
    guarded(|| unsafe {
        let pp = match pp.as_ref() {
            Some(p) => p,
            None => return null_arg(),
        };
        if bytes.is_null() {
            return null_arg();
        }
        let data = std::slice::from_raw_parts(bytes, len);
        match CiphertextHeader::from_bytes(data, &pp.0) {
            Ok(v) => put(out, DbeSsHeader(v)),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `ptr` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dbe_ss_header_free(ptr: *mut DbeSsHeader) {
    free_handle(ptr);
}

// ---- session keys ---------------------------------------------------------------

/// Session-key length in bits.
///
/// # Safety
/// `key` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dbe_session_key_bits(key: *const DbeSessionKey) -> u32 {
    key.as_ref().map_or(0, |k| k.0 .0.lambda())
}

/// Copies the session-key bytes (big-endian, `ceil(bits/8)` long) into
/// `buf` and returns the full byte length (query it with a null `buf`).
///
/// # Safety
/// `buf` must be null or point to `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn dbe_session_key_bytes(
    key: *const DbeSessionKey,
    buf: *mut u8,
    cap: usize,
) -> usize {
    match key.as_ref() {
        Some(k) => {
            let bytes = k.0 .0.as_bytes();
            if !buf.is_null() && cap > 0 {
                let n = bytes.len().min(cap);
                std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf, n);
            }
            bytes.len()
        }
        None => 0,
    }
}

/// # Safety
/// `ptr` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dbe_session_key_free(ptr: *mut DbeSessionKey) {
    free_handle(ptr);
}

// ---- doubled (adaptive) scheme ---------------------------------------------------

/// Runs the doubled setup for `users` logical users (2·users basic slots).
///
/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_setup(
    group: *const DbeGroup,
    users: u32,
    lambda: u32,
    seed: *const u8,
    seed_len: usize,
    out: *mut *mut DbeAdParams,
) -> DbeStatus {
    guarded(|| unsafe {
        let group = match group.as_ref() {
            Some(g) => g,
            None => return null_arg(),
        };
        let mut rng = rng_from(seed, seed_len);
        match dbe_ad::setup(&mut rng, group.0.clone(), users, lambda) {
            Ok(pp) => put(out, DbeAdParams(pp)),
            Err(e) => fail(e),
        }
    })
}

/// Logical user count.
///
/// # Safety
/// `pp` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_params_users(pp: *const DbeAdParams) -> u32 {
    pp.as_ref().map_or(0, |p| p.0.users())
}

/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_params_serialize(
    pp: *const DbeAdParams,
    out: *mut *mut u8,
    out_len: *mut usize,
) -> DbeStatus {
    guarded(|| unsafe {
        match pp.as_ref() {
            Some(pp) => put_bytes(out, out_len, pp.0.to_bytes()),
            None => null_arg(),
        }
    })
}

/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_params_parse(
    bytes: *const u8,
    len: usize,
    out: *mut *mut DbeAdParams,
) -> DbeStatus {
    guarded(|| unsafe {
        if bytes.is_null() {
            return null_arg();
        }
        let data = std::slice::from_raw_parts(bytes, len);
        match AdPublicParams::from_bytes(data) {
            Ok(pp) => put(out, DbeAdParams(pp)),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `ptr` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_params_free(ptr: *mut DbeAdParams) {
    free_handle(ptr);
}

/// Generates a full doubled key pair (kept secret, slot bit, both public
/// halves).
///
/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_keygen(
    pp: *const DbeAdParams,
    index: u32,
    seed: *const u8,
    seed_len: usize,
    out: *mut *mut DbeAdKeyPair,
) -> DbeStatus {
    guarded(|| unsafe {
        let pp = match pp.as_ref() {
            Some(p) => p,
            None => return null_arg(),
        };
        let mut rng = rng_from(seed, seed_len);
        match dbe_ad::gen_key(&mut rng, index, &pp.0) {
            Ok(kp) => put(out, DbeAdKeyPair(kp)),
            Err(e) => fail(e),
        }
    })
}

/// Clones the public half of a key pair into its own handle.
///
/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_keypair_public(
    keypair: *const DbeAdKeyPair,
    out: *mut *mut DbeAdPublicKey,
) -> DbeStatus {
    guarded(|| unsafe {
        match keypair.as_ref() {
            Some(kp) => put(out, DbeAdPublicKey(kp.0.public.clone())),
            None => null_arg(),
        }
    })
}

/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_is_valid(
    pp: *const DbeAdParams,
    index: u32,
    upk: *const DbeAdPublicKey,
    out_valid: *mut u8,
) -> DbeStatus {
    guarded(|| unsafe {
        let (pp, upk) = match (pp.as_ref(), upk.as_ref()) {
            (Some(p), Some(u)) => (p, u),
            _ => return null_arg(),
        };
        if out_valid.is_null() {
            return null_arg();
        }
        match dbe_ad::is_valid(index, &upk.0, &pp.0) {
            Ok(v) => {
                *out_valid = u8::from(v);
                DbeStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

unsafe fn collect_ad_upks(
    indices: *const u32,
    upks: *const *const DbeAdPublicKey,
    count: usize,
) -> Result<(BTreeSet<u32>, BTreeMap<u32, AdUserPublicKey>), DbeStatus> {
    if indices.is_null() || upks.is_null() {
        return Err(null_arg());
    }
    let indices = std::slice::from_raw_parts(indices, count);
    let upks = std::slice::from_raw_parts(upks, count);
    let mut set = BTreeSet::new();
    let mut map = BTreeMap::new();
    for (i, (&idx, &upk)) in indices.iter().zip(upks).enumerate() {
        let upk = match upk.as_ref() {
            Some(u) => u,
            None => {
                set_last_error(&format!("null public key at position {i}"));
                return Err(DbeStatus::NullPointer);
            }
        };
        set.insert(idx);
        map.insert(idx, upk.0.clone());
    }
    Ok((set, map))
}

/// # Safety
/// Array and pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_encaps(
    pp: *const DbeAdParams,
    indices: *const u32,
    upks: *const *const DbeAdPublicKey,
    count: usize,
    seed: *const u8,
    seed_len: usize,
    out_header: *mut *mut DbeAdHeader,
    out_key: *mut *mut DbeSessionKey,
) -> DbeStatus {
    guarded(|| unsafe {
        let pp = match pp.as_ref() {
            Some(p) => p,
            None => return null_arg(),
        };
        let (set, map) = match collect_ad_upks(indices, upks, count) {
            Ok(x) => x,
            Err(st) => return st,
        };
        let mut rng = rng_from(seed, seed_len);
        match dbe_ad::encaps(&mut rng, &set, &map, &pp.0) {
            Ok((header, key)) => {
                let st = put(out_header, DbeAdHeader(header));
                if st != DbeStatus::Ok {
                    return st;
                }
                let st = put(out_key, DbeSessionKey(key));
                if st != DbeStatus::Ok {
                    free_handle(*out_header);
                    *out_header = std::ptr::null_mut();
                }
                st
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// Array and pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_decaps(
    pp: *const DbeAdParams,
    indices: *const u32,
    upks: *const *const DbeAdPublicKey,
    count: usize,
    header: *const DbeAdHeader,
    index: u32,
    keypair: *const DbeAdKeyPair,
    out_key: *mut *mut DbeSessionKey,
) -> DbeStatus {
    guarded(|| unsafe {
        let (pp, header, keypair) = match (pp.as_ref(), header.as_ref(), keypair.as_ref()) {
            (Some(p), Some(h), Some(k)) => (p, h, k),
            _ => return null_arg(),
        };
        let (set, map) = match collect_ad_upks(indices, upks, count) {
            Ok(x) => x,
            Err(st) => return st,
        };
        match dbe_ad::decaps(&set, &header.0, index, &keypair.0, &map, &pp.0) {
            Ok(Some(key)) => put(out_key, DbeSessionKey(key)),
            Ok(None) => {
                set_last_error("index not in the recipient set");
                DbeStatus::Bottom
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_keypair_serialize(
    keypair: *const DbeAdKeyPair,
    pp: *const DbeAdParams,
    out: *mut *mut u8,
    out_len: *mut usize,
) -> DbeStatus {
    guarded(|| unsafe {
        match (keypair.as_ref(), pp.as_ref()) {
            (Some(k), Some(p)) => put_bytes(out, out_len, k.0.to_bytes(&p.0)),
            _ => null_arg(),
        }
    })
}

/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_keypair_parse(
    bytes: *const u8,
    len: usize,
    pp: *const DbeAdParams,
    out: *mut *mut DbeAdKeyPair,
) -> DbeStatus {
    guarded(|| unsafe {
        let pp = match pp.as_ref() {
            Some(p) => p,
            None => return null_arg(),
        };
        if bytes.is_null() {
            return null_arg();
        }
        let data = std::slice::from_raw_parts(bytes, len);
        match AdKeyPair::from_bytes(data, &pp.0) {
            Ok(v) => put(out, DbeAdKeyPair(v)),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `ptr` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_keypair_free(ptr: *mut DbeAdKeyPair) {
    free_handle(ptr);
}

/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_public_key_serialize(
    key: *const DbeAdPublicKey,
    pp: *const DbeAdParams,
    out: *mut *mut u8,
    out_len: *mut usize,
) -> DbeStatus {
    guarded(|| unsafe {
        match (key.as_ref(), pp.as_ref()) {
            (Some(k), Some(p)) => put_bytes(out, out_len, k.0.to_bytes(&p.0)),
            _ => null_arg(),
        }
    })
}

/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_public_key_parse(
    bytes: *const u8,
    len: usize,
    pp: *const DbeAdParams,
    out: *mut *mut DbeAdPublicKey,
) -> DbeStatus {
    guarded(|| unsafe {
        let pp = match pp.as_ref() {
            Some(p) => p,
            None => return null_arg(),
        };
        if bytes.is_null() {
            return null_arg();
        }
        let data = std::slice::from_raw_parts(bytes, len);
        match AdUserPublicKey::from_bytes(data, &pp.0) {
            Ok(v) => put(out, DbeAdPublicKey(v)),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `ptr` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_public_key_free(ptr: *mut DbeAdPublicKey) {
    free_handle(ptr);
}

/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_header_serialize(
    header: *const DbeAdHeader,
    pp: *const DbeAdParams,
    out: *mut *mut u8,
    out_len: *mut usize,
) -> DbeStatus {
    guarded(|| unsafe {
        match (header.as_ref(), pp.as_ref()) {
            (Some(h), Some(p)) => put_bytes(out, out_len, h.0.to_bytes(&p.0)),
            _ => null_arg(),
        }
    })
}

/// # Safety
/// Pointer arguments follow the library conventions.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_header_parse(
    bytes: *const u8,
    len: usize,
    pp: *const DbeAdParams,
    out: *mut *mut DbeAdHeader,
) -> DbeStatus {
    guarded(|| unsafe {
        let pp = match pp.as_ref() {
            Some(p) => p,
            None => return null_arg(),
        };
        if bytes.is_null() {
            return null_arg();
        }
        let data = std::slice::from_raw_parts(bytes, len);
        match AdCiphertextHeader::from_bytes(data, &pp.0) {
            Ok(v) => put(out, DbeAdHeader(v)),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `ptr` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dbe_ad_header_free(ptr: *mut DbeAdHeader) {
    free_handle(ptr);
}
