#pragma once
#include <doctest.h>

#include "helmbie/error.hpp"

/// Error code thrown by f; fails the test when nothing is thrown.
template <typename F>
helmbie::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const helmbie::Error& e) {
    return e.code();
  }
  FAIL("expected helmbie::Error");
  return helmbie::ErrorCode::PreconditionViolated;
}
