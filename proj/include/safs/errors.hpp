#pragma once

#include <stdexcept>
#include <string>

namespace safs {

/// Base class for all errors raised by this library.
class SafsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Template document errors.
class SyntaxError : public SafsError { public: using SafsError::SafsError; };
class SchemaError : public SafsError { public: using SafsError::SafsError; };
class InvalidTemplate : public SafsError { public: using SafsError::SafsError; };
class MissingAssignment : public SafsError { public: using SafsError::SafsError; };
class UnknownServer : public SafsError { public: using SafsError::SafsError; };
class BadFlavor : public SafsError { public: using SafsError::SafsError; };

// File-backed store errors.
class IoError : public SafsError { public: using SafsError::SafsError; };
class FormatError : public SafsError { public: using SafsError::SafsError; };
class ReferentialError : public SafsError { public: using SafsError::SafsError; };

// Performance model errors.
class InvalidModel : public SafsError { public: using SafsError::SafsError; };
class UnsupportedColocation : public SafsError { public: using SafsError::SafsError; };

// Analysis / selection errors.
class MissingManifest : public SafsError { public: using SafsError::SafsError; };
class MissingRequirement : public SafsError { public: using SafsError::SafsError; };
class Unsatisfiable : public SafsError { public: using SafsError::SafsError; };

// Plan / execution errors.
class UnresolvedTarget : public SafsError { public: using SafsError::SafsError; };
class RunnerError : public SafsError { public: using SafsError::SafsError; };

} // namespace safs
