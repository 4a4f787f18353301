#ifndef BESTCHOICE_ERRORS_HPP
#define BESTCHOICE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bestchoice {

// Root of every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class domain_error : public error {
 public:
  using error::error;
};

class no_bracket : public error {
 public:
  using error::error;
};

class no_convergence : public error {
 public:
  using error::error;
};

class invalid_interval : public error {
 public:
  using error::error;
};

// Equilibrium rules are only established for priority p <= 1/2.
class unsupported_priority : public error {
 public:
  using error::error;
};

class too_large : public error {
 public:
  using error::error;
};

}  // namespace bestchoice

#endif
