#pragma once

// Printing and persistence.
//
// Mat<T>::print, save and load are defined for the five element kinds plus
// the index (uword) and logical (uint8_t) matrices. The binary format only
// stores the five element kinds.
//
// raw_ascii   rows on separate lines, elements separated by one space, real
//             values in the shortest form that reads back exactly, complex
//             values as "(re,im)"
// csv_ascii   same, comma separated, no header; a leading non-numeric line is
//             skipped on load
// tagged_binary
//             "STLA1", one kind byte, n_rows and n_cols as u64 little-endian,
//             then the elements in column-major order, little-endian
//
// An empty matrix saves as an empty ascii file, or a binary header with zero
// dimensions. Loading auto-detects binary files by their magic bytes and
// chooses csv when a line contains a comma outside parentheses.

#include <string>
#include <string_view>
#include <variant>

#include "streamla/mat.hpp"

namespace streamla {

/// A matrix of any element kind, as found in a file.
using AnyMat = std::variant<imat, fmat, mat, cx_fmat, cx_mat>;

/// Parses "auto", "ascii"/"raw_ascii", "csv"/"csv_ascii", "bin"/"binary"/"tagged_binary".
FileFormat format_from_name(std::string_view name);
std::string_view format_name(FileFormat f);

/// Reads just enough of the file to decide its format.
FileFormat detect_format(const std::string& path);

/// Loads a file whose element kind is not known in advance. Binary files
/// keep their stored kind; ascii files give mat, or cx_mat when any element
/// is written as a complex pair.
AnyMat load_any(const std::string& path, FileFormat format = FileFormat::auto_detect);
void save_any(const AnyMat& m, const std::string& path, FileFormat format = FileFormat::raw_ascii);

ElementKind kind_of(const AnyMat& m);

template <Scalar T>
Mat<T> load_mat(const std::string& path, FileFormat format = FileFormat::auto_detect) {
  Mat<T> m;
  m.load(path, format);
  return m;
}

template <Scalar T>
void save(const Mat<T>& m, const std::string& path, FileFormat format = FileFormat::raw_ascii) {
  m.save(path, format);
}

}  // namespace streamla
