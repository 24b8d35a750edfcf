#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lgram {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Error with a character span into the offending input text.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t begin, std::size_t end)
      : Error(msg), begin_(begin), end_(end) {}
  std::size_t begin() const { return begin_; }
  std::size_t end() const { return end_; }

 private:
  std::size_t begin_;
  std::size_t end_;
};

}  // namespace lgram
