//! C interface to `symquad`.
//!
//! Every function returns an `SqStatus`; results go through out-pointers.
//! Strings handed out by the library are owned by the caller and must be
//! released with `sq_string_free`. Big integers and rationals travel as
//! decimal strings ("p/q" for fractions). After a failure,
//! `sq_last_error` describes it for the calling thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use symquad::algebra::{rat, ProjSymPoint, QMatrix, Rat};
use symquad::blowup::{self, AmbientData, Preset, SegreData};
use symquad::picard::{fano_type, FanoType};
use symquad::schubert::{ring_tables, RingTable};
use symquad::symplectic::{classify_point, secant_deg};
use symquad::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqStatus {
    Ok = 0,
    InvalidArgument = 1,
    OutOfRange = 2,
    DimensionMismatch = 3,
    Parse = 4,
    Precondition = 5,
    Unsupported = 6,
    Invariant = 7,
    NullPointer = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqFano {
    Fano = 0,
    WeakFano = 1,
    NotAmple = 2,
}

/// Cohomology ring of a Lagrangian Grassmannian.
pub struct SqRing {
    table: RingTable,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SqStatus {
    match e {
        Error::InvalidArgument(_) => SqStatus::InvalidArgument,
        Error::OutOfRange(_) => SqStatus::OutOfRange,
        Error::DimensionMismatch(_) => SqStatus::DimensionMismatch,
        Error::Parse(_) => SqStatus::Parse,
        Error::Precondition(_) => SqStatus::Precondition,
        Error::Unsupported(_) => SqStatus::Unsupported,
        Error::Invariant { .. } => SqStatus::Invariant,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SqStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            SqStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            let msg = match &e {
                Error::Invariant { witness, .. } => format!("{e} (witness: {witness})"),
                _ => e.to_string(),
            };
            set_error(msg);
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            SqStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Lib(Error::Parse(format!("{what} is not UTF-8"))))
}

unsafe fn write<T>(out: *mut T, v: T, what: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    *out = v;
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail::Lib(Error::invariant("interior NUL", "")))?;
    write(out, c.into_raw(), "out")
}

unsafe fn read_rats(items: *const *const c_char, len: usize) -> Result<Vec<Rat>, Fail> {
    if len > 0 && items.is_null() {
        return Err(Fail::Null("array"));
    }
    (0..len)
        .map(|i| Ok(rat::parse(read_str(*items.add(i), "array entry")?)?))
        .collect()
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn sq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub unsafe extern "C" fn sq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Degree of the `h`-th secant variety of the second Veronese of `P^n`.
#[no_mangle]
pub unsafe extern "C" fn sq_secant_degree(n: usize, h: usize, out: *mut *mut c_char) -> SqStatus {
    guard(|| write_string(out, secant_deg(n, h)?.to_string()))
}

/// Stratum label of the symmetric `2r x 2r` matrix given row-major as
/// `4 r^2` rational strings.
#[no_mangle]
pub unsafe extern "C" fn sq_classify_point(
    r: usize,
    entries: *const *const c_char,
    len: usize,
    out: *mut *mut c_char,
) -> SqStatus {
    guard(|| {
        let n = 2 * r;
        if r == 0 || len != n * n {
            return Err(Error::DimensionMismatch(format!("{len} entries for r = {r}")).into());
        }
        let vals = read_rats(entries, len)?;
        let rows = vals.chunks(n).map(<[Rat]>::to_vec).collect();
        let p = ProjSymPoint::new(&QMatrix::from_rows(rows)?)?;
        write_string(out, classify_point(r, &p)?.to_string())
    })
}

/// `(aH - bE)^n` on the blow-up of an `n`-dimensional variety with
/// `H^n = h_top` along a center whose normal bundle has Segre classes
/// `segre[0..len]` (in powers of `h`, `H|_Z = m h`).
#[no_mangle]
pub unsafe extern "C" fn sq_blowup_power(
    a: i64,
    b: i64,
    n: usize,
    h_top: i64,
    m: i64,
    segre: *const *const c_char,
    len: usize,
    out: *mut *mut c_char,
) -> SqStatus {
    guard(|| {
        let s = read_rats(segre, len)?;
        if len == 0 || len > n {
            return Err(Error::DimensionMismatch(format!("{len} Segre classes in dimension {n}")).into());
        }
        let center_dim = len - 1;
        let ambient = AmbientData::new(n, h_top)?;
        let data = SegreData::new(center_dim, n - center_dim, m, s)?;
        write_string(out, blowup::blowup_power(a, b, n, &ambient, &data)?.to_string())
    })
}

/// Value of a named enumerative preset: "nine-lines", "chasles" or
/// "six-lines-symplectic".
#[no_mangle]
pub unsafe extern "C" fn sq_preset_value(name: *const c_char, out: *mut *mut c_char) -> SqStatus {
    guard(|| {
        let p: Preset = read_str(name, "name")?.parse()?;
        write_string(out, blowup::run_preset(p)?.value.to_string())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sq_symplectic_tangency_number(out: *mut i64) -> SqStatus {
    guard(|| {
        let v = blowup::symplectic_tangency_number()?;
        let v = i64::try_from(&v).map_err(|_| Error::OutOfRange(v.to_string()))?;
        write(out, v, "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn sq_fano_type(r: usize, out: *mut SqFano) -> SqStatus {
    guard(|| {
        let t = match fano_type(r)? {
            FanoType::Fano => SqFano::Fano,
            FanoType::WeakFano => SqFano::WeakFano,
            FanoType::NotAmple => SqFano::NotAmple,
        };
        write(out, t, "out")
    })
}

/// Builds and verifies the ring for `LG(r, 2r)`. Free with `sq_ring_free`.
#[no_mangle]
pub unsafe extern "C" fn sq_ring_new(r: usize, out: *mut *mut SqRing) -> SqStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let ring = Box::new(SqRing { table: ring_tables(r)? });
        *out = Box::into_raw(ring);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sq_ring_free(ring: *mut SqRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

unsafe fn ring_ref<'a>(ring: *const SqRing) -> Result<&'a RingTable, Fail> {
    ring.as_ref().map(|r| &r.table).ok_or(Fail::Null("ring"))
}

#[no_mangle]
pub unsafe extern "C" fn sq_ring_graded_dimension(
    ring: *const SqRing,
    degree: usize,
    out: *mut usize,
) -> SqStatus {
    guard(|| {
        let t = ring_ref(ring)?;
        write(out, t.basis(degree).len(), "out")
    })
}

/// Expands an expression such as "s1*s1*s2 - s[2,1]" in the strict
/// partition basis.
#[no_mangle]
pub unsafe extern "C" fn sq_ring_evaluate(
    ring: *const SqRing,
    expr: *const c_char,
    out: *mut *mut c_char,
) -> SqStatus {
    guard(|| {
        let t = ring_ref(ring)?;
        let e = t.evaluate(read_str(expr, "expr")?)?;
        write_string(out, e.to_string())
    })
}

/// Degree of a top-weight expression.
#[no_mangle]
pub unsafe extern "C" fn sq_ring_integrate(
    ring: *const SqRing,
    expr: *const c_char,
    out: *mut *mut c_char,
) -> SqStatus {
    guard(|| {
        let t = ring_ref(ring)?;
        let e = t.evaluate(read_str(expr, "expr")?)?;
        write_string(out, rat::to_string(&t.integrate(&e)?))
    })
}

