#pragma once

#include <string>

#include "chartscribe/error.hpp"
#include "doctest.h"

// Checks that `expr` throws chartscribe::Error with the given code.
#define CHECK_ERROR(expr, expected)                                                                     \
    do {                                                                                                \
        try {                                                                                           \
            (void)(expr);                                                                               \
            FAIL_CHECK("expected " << chartscribe::to_string(expected) << " from " #expr);              \
        } catch (const chartscribe::Error& err_) {                                                      \
            CHECK_MESSAGE(err_.code() == (expected), "got " << err_.what() << " from " #expr);          \
        }                                                                                               \
    } while (false)

namespace test {

inline chartscribe::Error capture(auto&& fn) {
    try {
        fn();
    } catch (const chartscribe::Error& e) {
        return e;
    }
    FAIL("no chartscribe::Error thrown");
    throw;  // unreachable
}

}  // namespace test
