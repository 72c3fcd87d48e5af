#include "entkit/compressor.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>

#include "entkit/errors.hpp"
#include "entkit/huffman.hpp"

namespace entkit {

namespace {

// A mkstemp-backed file removed on destruction.
class TempFile {
 public:
  TempFile() {
    const char* tmpdir = std::getenv("TMPDIR");
    path_ = std::string(tmpdir && *tmpdir ? tmpdir : "/tmp") + "/entkit-XXXXXX";
    fd_ = mkstemp(path_.data());
    if (fd_ < 0) {
      throw Error("cannot create temporary file in " + path_);
    }
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  ~TempFile() {
    if (fd_ >= 0) ::close(fd_);
    if (!path_.empty()) ::unlink(path_.c_str());
  }

  const std::string& path() const noexcept { return path_; }

  void write_all(std::span<const unsigned char> data) {
    std::size_t written = 0;
    while (written < data.size()) {
      ssize_t rc = ::write(fd_, data.data() + written, data.size() - written);
      if (rc < 0) throw Error("cannot write temporary file " + path_);
      written += static_cast<std::size_t>(rc);
    }
  }

  std::vector<unsigned char> read_all() const {
    std::ifstream in(path_, std::ios::binary);
    return std::vector<unsigned char>(std::istreambuf_iterator<char>(in),
                                      std::istreambuf_iterator<char>());
  }

  std::string read_text(std::size_t limit = 4096) const {
    auto bytes = read_all();
    if (bytes.size() > limit) bytes.resize(limit);
    return std::string(bytes.begin(), bytes.end());
  }

 private:
  std::string path_;
  int fd_ = -1;
};

std::vector<unsigned char> run_once(const std::string& command_template,
                                    std::span<const unsigned char> input) {
  TempFile in, out, err;
  in.write_all(input);

  // Subshell so that templates containing pipes still see the redirections.
  const std::string command = "( " + command_template + " ) < '" + in.path() + "' > '" +
                              out.path() + "' 2> '" + err.path() + "'";
  const int status = std::system(command.c_str());
  if (status < 0) {
    throw ExternalProcessError(-1, "failed to launch shell");
  }
  int exit_code = 0;
  if (WIFEXITED(status)) {
    exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    exit_code = 128 + WTERMSIG(status);
  }
  if (exit_code != 0) {
    throw ExternalProcessError(exit_code, err.read_text());
  }
  return out.read_all();
}

}  // namespace

std::string CompressorHandle::describe() const {
  if (const auto* builtin = std::get_if<Builtin>(&kind)) {
    return builtin->separator_mode ? "builtin(separator)" : "builtin";
  }
  return "external:" + std::get<External>(kind).command_template;
}

std::vector<unsigned char> external_compress(const std::string& command_template,
                                             std::span<const unsigned char> input) {
  std::vector<unsigned char> output = run_once(command_template, input);
  if (output.empty()) {
    throw ExternalProcessError(0, "compressor produced no output");
  }
  return output;
}

namespace {

Codelength external_codelength(const CompressorHandle::External& external,
                               std::span<const unsigned char> bytes) {
  std::vector<unsigned char> output = external_compress(external.command_template, bytes);
  if (external.verify_deterministic) {
    std::vector<unsigned char> again = external_compress(external.command_template, bytes);
    if (again != output) {
      throw ExternalProcessError(0, "compressor output differs between identical runs");
    }
  }
  Codelength result;
  result.total_bits = 8.0 * static_cast<double>(output.size());
  return result;
}

Codelength builtin_codelength(const SymbolString& x) {
  CompressedBlob blob = huffman_compress(x);
  Codelength result;
  result.total_bits = static_cast<double>(blob.total_bits_padded());
  result.header_bits = static_cast<double>(blob.header_bits);
  result.payload_bits = static_cast<double>(blob.payload_bits);
  return result;
}

}  // namespace

Codelength codelength(const CompressorHandle& handle, const SymbolString& x) {
  if (x.empty()) throw EmptyInputError();
  if (handle.is_builtin()) {
    return builtin_codelength(x);
  }
  auto bytes = x.render();
  return external_codelength(std::get<CompressorHandle::External>(handle.kind), bytes);
}

Codelength pair_codelength(const CompressorHandle& handle, const SymbolString& x,
                           const SymbolString& y) {
  if (x.empty() || y.empty()) throw EmptyInputError();
  if (handle.is_builtin()) {
    const auto& builtin = std::get<CompressorHandle::Builtin>(handle.kind);
    return builtin_codelength(builtin.separator_mode ? concat_with_separator(x, y)
                                                     : concat(x, y));
  }
  auto bytes = x.render();
  auto tail = y.render();
  bytes.insert(bytes.end(), tail.begin(), tail.end());
  return external_codelength(std::get<CompressorHandle::External>(handle.kind), bytes);
}

}  // namespace entkit
