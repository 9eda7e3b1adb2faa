#pragma once

#include <stdexcept>
#include <string>

namespace valring {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

class InvalidElement : public Error
{
public:
	using Error::Error;
};

class NotInvertible : public Error
{
public:
	using Error::Error;
};

/// A requested enumeration or matrix would exceed the configured size cap.
class CapacityError : public Error
{
public:
	using Error::Error;
};

/// A vector with no unit coordinate was handed to canonicalization.
class DegenerateVector : public Error
{
public:
	using Error::Error;
};

class DimensionMismatch : public Error
{
public:
	using Error::Error;
};

class RingMismatch : public Error
{
public:
	using Error::Error;
};

class ParseError : public Error
{
public:
	using Error::Error;
};

class InvalidRing : public Error
{
public:
	using Error::Error;
};

class NumericalError : public Error
{
public:
	NumericalError(const std::string &what, long iterations)
	    : Error(what), iterations_(iterations)
	{
	}
	long iterations() const noexcept { return iterations_; }

private:
	long iterations_;
};

class ConfigError : public Error
{
public:
	using Error::Error;
};

} // namespace valring
