/******************************************************************************
This source code is licensed under the MIT license found in the
LICENSE file in the root directory of this source tree.
*******************************************************************************/

#pragma once

#include <stdexcept>
#include <string>

namespace mphx {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed user input: spec strings, price files, compare configs.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// Parameters that cannot be realized (port budget, divisibility, connectivity).
class InfeasibleError : public Error {
  public:
    using Error::Error;
};

/// A price needed by the cost model is missing or the NIC count is zero.
class CostError : public Error {
  public:
    using Error::Error;
};

}  // namespace mphx
