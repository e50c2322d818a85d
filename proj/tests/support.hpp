#ifndef PANELRANK_TESTS_SUPPORT_HPP
#define PANELRANK_TESTS_SUPPORT_HPP

#include <doctest.h>

#include <string>

#include "panelrank/error.hpp"

namespace support {

inline const std::string kData = PANELRANK_TEST_DATA;

/// Runs fn and returns the code of the panelrank::Error it throws.
template <class Fn>
panelrank::ErrorCode code_of(Fn&& fn) {
    try {
        fn();
    } catch (const panelrank::Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return panelrank::ErrorCode::IoError;
}

}  // namespace support

#endif
