use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use mactt::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MacttStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Input text could not be parsed.
    Parse = 3,
    /// A named object or map does not exist, or the choice is ambiguous.
    NotFound = 4,
    /// A dimension exceeds the truncation.
    Truncation = 5,
    /// The input is well formed but violates a structural rule.
    Invalid = 6,
    /// The library panicked. This is a bug.
    Panic = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

pub(crate) fn set_last_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).ok());
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// Message of the last failed call on this thread, or null.
///
/// The pointer stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn mactt_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

pub(crate) struct Failure(pub MacttStatus, pub String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } | Error::Decode { .. } => MacttStatus::Parse,
            Error::Truncation { .. } | Error::TruncationOverflow { .. } => MacttStatus::Truncation,
            _ => MacttStatus::Invalid,
        };
        Failure(status, e.to_string())
    }
}

pub(crate) fn fail<T>(status: MacttStatus, message: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, message.into()))
}

/// Runs `body`, records any failure and turns panics into `Panic`.
pub(crate) fn guard<F>(body: F) -> MacttStatus
where
    F: FnOnce() -> Result<(), Failure> + UnwindSafe,
{
    clear_last_error();
    match catch_unwind(body) {
        Ok(Ok(())) => MacttStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            MacttStatus::Panic
        }
    }
}
