#pragma once

#include "doctest.h"

#include "blowup/errors.hpp"

// Runs `expr` and checks that it throws blowup::Error with the given code.
#define CHECK_ERROR_CODE(expr, expected)                                              \
    do {                                                                              \
        bool thrown_ = false;                                                         \
        try {                                                                         \
            (void)(expr);                                                             \
        } catch (const blowup::Error& e_) {                                           \
            thrown_ = true;                                                           \
            CHECK_MESSAGE(e_.code() == (expected), "got ", blowup::to_string(e_.code())); \
        }                                                                             \
        CHECK_MESSAGE(thrown_, #expr " did not throw");                               \
    } while (0)
