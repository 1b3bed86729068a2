#pragma once

#include <stdexcept>
#include <string>

namespace entpot {

// Base class for everything this library throws on bad input or a broken
// internal cross-check.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class NegativeProbability : public Error {
public:
    using Error::Error;
};

class NormalizationError : public Error {
public:
    using Error::Error;
};

class TailNotReachable : public Error {
public:
    using Error::Error;
};

class WeightMismatch : public Error {
public:
    using Error::Error;
};

class OrderTooLarge : public Error {
public:
    using Error::Error;
};

class NonHermitian : public Error {
public:
    using Error::Error;
};
using NonHermitianInput = NonHermitian;

class NegativeDiagonal : public Error {
public:
    using Error::Error;
};

// The numerically built beam-splitter unitary failed its mode-rotation
// cross-check; indicates a sign or convention bug, never bad user input.
class HeisenbergCheckFailed : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class EmptyGrid : public Error {
public:
    using Error::Error;
};

// Command-line usage problems (unknown parameter names and the like), kept
// separate from input validation so the CLI can map them to a distinct exit
// code.
class BadFlag : public Error {
public:
    using Error::Error;
};

}  // namespace entpot
