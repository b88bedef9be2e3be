#pragma once

#include <stdexcept>
#include <string>

namespace qh {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class UnclosableFamily : public Error {
public:
    using Error::Error;
};

class ResourceBudget : public Error {
public:
    using Error::Error;
};

class WindowTooShort : public Error {
public:
    using Error::Error;
};

}  // namespace qh
