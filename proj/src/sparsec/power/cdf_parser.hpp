#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "sparsec/power/network.hpp"

namespace sparsec {

class CdfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed record; carries the 1-based line number and column span of the
// offending field.
class ParseError : public CdfError {
 public:
  ParseError(int line, int col_begin, int col_end, const std::string& what);
  int line;
  int col_begin;
  int col_end;
};

class MissingSection : public CdfError {
 public:
  using CdfError::CdfError;
};

class MultipleSlack : public CdfError {
 public:
  using CdfError::CdfError;
};

class MissingSlack : public CdfError {
 public:
  using CdfError::CdfError;
};

class DisconnectedNetwork : public CdfError {
 public:
  using CdfError::CdfError;
};

// Reads a network from IEEE Common Data Format text.
//
// Format reference (1-based, inclusive column ranges of the fields consumed):
//   title card:  32-37 base MVA
//   bus card:     1-4 bus number, 25-26 type (0/1 load, 2 generator,
//                3 slack), 77-83 base kV
//   branch card:  1-4 from bus, 6-9 to bus, 20-29 series R (pu),
//                30-40 series X (pu), 41-50 total line charging B (pu),
//                77-82 transformer turns ratio (0 or blank means none)
// Sections open with "BUS DATA FOLLOWS" / "BRANCH DATA FOLLOWS" and close
// with a -999 sentinel line. Other card fields (names, loads, generation,
// solved voltages, ratings) are carried by real files and skipped here.
PowerNetwork parse_cdf(std::string_view text);

// Convenience wrapper; open failures report the path, parse failures carry
// their own line/column context.
PowerNetwork parse_cdf_file(const std::string& path);

}  // namespace sparsec
