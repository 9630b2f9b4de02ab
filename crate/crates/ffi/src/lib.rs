//! C ABI over `smoothwords`.
//!
//! Words cross the boundary as opaque `SwWord` handles, created by the `sw_word_*` constructors
//! and released with [`sw_word_free`]. Every fallible function returns an [`SwStatus`] and writes
//! its result through an out-pointer, which is left untouched on failure. Panics are caught and
//! reported as `SW_STATUS_PANIC`.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use smoothwords::lfe::p_level;
use smoothwords::{closure, derivative, height, is_lfe, is_smooth, rho, Alphabet, Error, Word};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidAlphabet = 2,
    InvalidLetter = 3,
    ParseError = 4,
    NotDifferentiable = 5,
    NotSmooth = 6,
    EmptyWord = 7,
    ResourceLimit = 8,
    InvalidArgument = 9,
    BufferTooSmall = 10,
    Internal = 11,
    Panic = 12,
}

impl From<&Error> for SwStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidAlphabet { .. } | Error::NotEvenAlphabet { .. } => {
                SwStatus::InvalidAlphabet
            }
            Error::LetterNotInAlphabet { .. } => SwStatus::InvalidLetter,
            Error::Parse(_) => SwStatus::ParseError,
            Error::NotDifferentiable(_)
            | Error::NotTwiceDifferentiable
            | Error::RunTooLong { .. } => SwStatus::NotDifferentiable,
            Error::NotSmooth | Error::NotLfe => SwStatus::NotSmooth,
            Error::EmptyWord => SwStatus::EmptyWord,
            Error::ResourceLimit { .. } | Error::BoundTooSmall { .. } => SwStatus::ResourceLimit,
            Error::XiOutOfRange { .. }
            | Error::EmptyRange(_)
            | Error::InsufficientData(_)
            | Error::InvalidArgument(_) => SwStatus::InvalidArgument,
            Error::Internal(_) => SwStatus::Internal,
        }
    }
}

/// Opaque word handle.
pub struct SwWord(Word);

fn guarded(f: impl FnOnce() -> Result<(), SwStatus>) -> SwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SwStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => SwStatus::Panic,
    }
}

fn lib<T>(r: smoothwords::Result<T>) -> Result<T, SwStatus> {
    r.map_err(|e| SwStatus::from(&e))
}

unsafe fn word_ref<'a>(w: *const SwWord) -> Result<&'a Word, SwStatus> {
    w.as_ref().map(|w| &w.0).ok_or(SwStatus::NullPointer)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), SwStatus> {
    if out.is_null() {
        return Err(SwStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

unsafe fn put_word(out: *mut *mut SwWord, w: Word) -> Result<(), SwStatus> {
    if out.is_null() {
        return Err(SwStatus::NullPointer);
    }
    out.write(Box::into_raw(Box::new(SwWord(w))));
    Ok(())
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn sw_status_message(status: SwStatus) -> *const c_char {
    let s: &'static CStr = match status {
        SwStatus::Ok => c"ok",
        SwStatus::NullPointer => c"null pointer argument",
        SwStatus::InvalidAlphabet => c"invalid alphabet",
        SwStatus::InvalidLetter => c"letter not in alphabet",
        SwStatus::ParseError => c"could not parse word",
        SwStatus::NotDifferentiable => c"word is not differentiable",
        SwStatus::NotSmooth => c"word is not smooth",
        SwStatus::EmptyWord => c"empty word",
        SwStatus::ResourceLimit => c"resource limit exceeded",
        SwStatus::InvalidArgument => c"invalid argument",
        SwStatus::BufferTooSmall => c"buffer too small",
        SwStatus::Internal => c"internal error",
        SwStatus::Panic => c"panic inside the library",
    };
    s.as_ptr()
}

/// Library version, NUL-terminated.
#[no_mangle]
pub extern "C" fn sw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a word from `len` letters. `letters` may be null when `len` is 0.
///
/// # Safety
/// `letters` must point to `len` readable `u32`s; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_word_new(
    a: u32,
    b: u32,
    letters: *const u32,
    len: usize,
    out: *mut *mut SwWord,
) -> SwStatus {
    guarded(|| {
        let s = lib(Alphabet::new(a, b))?;
        let slice = if len == 0 {
            &[][..]
        } else if letters.is_null() {
            return Err(SwStatus::NullPointer);
        } else {
            std::slice::from_raw_parts(letters, len)
        };
        put_word(out, lib(Word::new(s, slice))?)
    })
}

/// Parses a word from digit (`"2211"`) or comma (`"2,2,1,1"`) text.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_word_parse(
    a: u32,
    b: u32,
    text: *const c_char,
    out: *mut *mut SwWord,
) -> SwStatus {
    guarded(|| {
        if text.is_null() {
            return Err(SwStatus::NullPointer);
        }
        let s = lib(Alphabet::new(a, b))?;
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| SwStatus::ParseError)?;
        put_word(out, lib(Word::parse(s, text))?)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `w` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sw_word_free(w: *mut SwWord) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_word_len(w: *const SwWord, out: *mut usize) -> SwStatus {
    guarded(|| put(out, word_ref(w)?.len()))
}

/// Copies the letters into `buf`. `out_len` always receives the word length; when `cap` is
/// smaller the call fails with `SW_STATUS_BUFFER_TOO_SMALL` and `buf` is untouched.
///
/// # Safety
/// `buf` must have room for `cap` `u32`s (may be null when `cap` is 0); `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_word_letters(
    w: *const SwWord,
    buf: *mut u32,
    cap: usize,
    out_len: *mut usize,
) -> SwStatus {
    guarded(|| {
        let w = word_ref(w)?;
        put(out_len, w.len())?;
        if cap < w.len() {
            return Err(SwStatus::BufferTooSmall);
        }
        if w.is_empty() {
            return Ok(());
        }
        if buf.is_null() {
            return Err(SwStatus::NullPointer);
        }
        for (i, l) in w.letters().enumerate() {
            buf.add(i).write(l);
        }
        Ok(())
    })
}

/// `D(w)`.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_derivative(w: *const SwWord, out: *mut *mut SwWord) -> SwStatus {
    guarded(|| put_word(out, lib(derivative(word_ref(w)?).into_result())?))
}

/// Closure of `w`.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_closure(w: *const SwWord, out: *mut *mut SwWord) -> SwStatus {
    guarded(|| put_word(out, lib(closure(word_ref(w)?))?))
}

/// `rho(w) = D(closure(w))`.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_rho(w: *const SwWord, out: *mut *mut SwWord) -> SwStatus {
    guarded(|| put_word(out, lib(rho(word_ref(w)?).into_result())?))
}

/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_is_smooth(w: *const SwWord, out: *mut bool) -> SwStatus {
    guarded(|| put(out, is_smooth(word_ref(w)?, None)))
}

/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_height(w: *const SwWord, out: *mut u32) -> SwStatus {
    guarded(|| put(out, lib(height(word_ref(w)?, None))?))
}

/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_is_lfe(w: *const SwWord, out: *mut bool) -> SwStatus {
    guarded(|| put(out, is_lfe(word_ref(w)?, None)))
}

/// Number of smooth words of length `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_gamma(a: u32, b: u32, n: usize, out: *mut u64) -> SwStatus {
    guarded(|| {
        let s = lib(Alphabet::new(a, b))?;
        let value = if n == 0 {
            1
        } else {
            smoothwords::complexity::gamma_table_tree(s, n)
                .gamma(n)
                .expect("row n exists")
        };
        put(out, value)
    })
}

/// Size of level `j` of the LFE expansion tree.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_p_level_count(
    a: u32,
    b: u32,
    j: u32,
    max_states: u64,
    out: *mut u64,
) -> SwStatus {
    guarded(|| {
        let s = lib(Alphabet::new(a, b))?;
        if j == 0 {
            return Err(SwStatus::InvalidArgument);
        }
        put(out, lib(p_level(s, j, max_states))?.words.len() as u64)
    })
}

/// First `n` letters of the self-run-length-encoding sequence starting with `first`, as a word.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_kolakoski(
    a: u32,
    b: u32,
    first: u32,
    n: usize,
    out: *mut *mut SwWord,
) -> SwStatus {
    guarded(|| {
        let s = lib(Alphabet::new(a, b))?;
        put_word(out, lib(smoothwords::kolakoski::generate(s, first, n))?)
    })
}

/// Writes `w` as text into `buf` with a terminating NUL. `out_len` receives the text length
/// without the NUL; when `cap` is too small the call fails with `SW_STATUS_BUFFER_TOO_SMALL`.
///
/// # Safety
/// `buf` must have room for `cap` bytes (may be null when `cap` is 0); `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_word_text(
    w: *const SwWord,
    buf: *mut c_char,
    cap: usize,
    out_len: *mut usize,
) -> SwStatus {
    guarded(|| {
        let text = word_ref(w)?.to_text();
        put(out_len, text.len())?;
        if cap < text.len() + 1 {
            return Err(SwStatus::BufferTooSmall);
        }
        if buf.is_null() {
            return Err(SwStatus::NullPointer);
        }
        ptr::copy_nonoverlapping(text.as_ptr().cast::<c_char>(), buf, text.len());
        buf.add(text.len()).write(0);
        Ok(())
    })
}
