#pragma once

#include <string>

#include <doctest.h>

#include "picgrp/error.hpp"

// Runs f and returns the kind of the picgrp::Error it throws, or "" if none.
template <class F>
std::string error_kind(F&& f) {
  try {
    f();
  } catch (const picgrp::Error& e) {
    return e.kind();
  }
  return "";
}

#define CHECK_KIND(expr, kind) CHECK(error_kind([&] { (void)(expr); }) == std::string(kind))
