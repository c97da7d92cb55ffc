#include "rda/error.hpp"

namespace rda {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid dimension";
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::InvalidConfig: return "invalid configuration";
    case ErrorKind::InvalidLabel: return "invalid labels";
    case ErrorKind::NotPsd: return "matrix not positive semi-definite";
    case ErrorKind::Numerical: return "numerical failure";
    case ErrorKind::Unsupported: return "unsupported configuration";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace rda
