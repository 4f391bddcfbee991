#pragma once

#include <stdexcept>
#include <string>

namespace bergespec {

enum class Errc {
  parameter_domain,
  invalid_structure,
  length_mismatch,
  multiple_edge,
  shared_edge,
  shared_link,
  no_pendant_paths,
  too_large,
  parse,
  refused,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::parameter_domain: return "parameter_domain";
    case Errc::invalid_structure: return "invalid_structure";
    case Errc::length_mismatch: return "length_mismatch";
    case Errc::multiple_edge: return "multiple_edge";
    case Errc::shared_edge: return "shared_edge";
    case Errc::shared_link: return "shared_link";
    case Errc::no_pendant_paths: return "no_pendant_paths";
    case Errc::too_large: return "too_large";
    case Errc::parse: return "parse";
    case Errc::refused: return "refused";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace bergespec
