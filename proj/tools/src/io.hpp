#pragma once

#include <string>
#include <utility>
#include <vector>

namespace entkit::cli {

// Reads a file, or standard input when path is "-". Throws entkit::Error
// with the path in the message when the file cannot be read.
std::vector<unsigned char> read_input(const std::string& path);

// Drops one trailing "\n" or "\r\n" so that ordinary text fixtures do not
// smuggle a newline symbol into the alphabet.
void strip_trailing_newline(std::vector<unsigned char>& data);

// Writes to a file, or standard output when path is "-" or empty. File
// writes go through a temporary in the same directory plus a rename, so a
// half-written output never appears under the final name.
void write_output(const std::string& path, const std::string& data);
void write_output(const std::string& path, const std::vector<unsigned char>& data);

// One corpus entry: label plus the bytes loaded for it.
struct CorpusFile {
  std::string label;
  std::string path;
  std::vector<unsigned char> bytes;
};

struct CorpusLoad {
  std::vector<CorpusFile> files;
  std::vector<std::string> errors;  // unreadable entries, duplicate labels
};

// Loads a manifest: either a two-column CSV of "label,path" rows (paths
// relative to the manifest's directory) or a directory (every regular file,
// sorted by name, labeled with its file name). Unreadable entries are
// collected, not thrown.
CorpusLoad load_corpus(const std::string& manifest_path, bool strip_newlines);

}  // namespace entkit::cli
