#pragma once

#include <stdexcept>
#include <string>

namespace qbraid {

// Base of every error thrown by the library. Subclasses name the violated
// precondition so callers (and the CLI exit-code mapping) can dispatch on type.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define QBRAID_DEFINE_ERROR(Name)            \
  struct Name : Error {                      \
    using Error::Error;                      \
  }

QBRAID_DEFINE_ERROR(OverflowError);
QBRAID_DEFINE_ERROR(RankError);
QBRAID_DEFINE_ERROR(DimensionError);
QBRAID_DEFINE_ERROR(LatticeError);
QBRAID_DEFINE_ERROR(CrepancyError);
QBRAID_DEFINE_ERROR(SizeError);
QBRAID_DEFINE_ERROR(BoundaryPointError);
QBRAID_DEFINE_ERROR(FanError);
QBRAID_DEFINE_ERROR(NotInFanError);
QBRAID_DEFINE_ERROR(NotCompactError);
QBRAID_DEFINE_ERROR(SmoothnessError);
QBRAID_DEFINE_ERROR(EmptyIntersection);
QBRAID_DEFINE_ERROR(UnsupportedError);
QBRAID_DEFINE_ERROR(ConfigError);
QBRAID_DEFINE_ERROR(IndexError);
QBRAID_DEFINE_ERROR(SchemaError);
QBRAID_DEFINE_ERROR(IoError);

#undef QBRAID_DEFINE_ERROR

}  // namespace qbraid
