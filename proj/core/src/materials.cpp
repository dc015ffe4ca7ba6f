#include "cosmo/materials.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "materials_data.hpp"

namespace cosmo {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

Status validate(const Material& m) {
  if (m.name.empty()) {
    return Status::failure(ErrorCode::ParseError, "material name empty");
  }
  if (!(m.E > 0) || !std::isfinite(m.E)) {
    return Status::failure(ErrorCode::ParseError, m.name + ": E must be > 0");
  }
  if (!(m.nu >= 0 && m.nu < 0.5)) {
    return Status::failure(ErrorCode::ParseError,
                           m.name + ": nu must be in [0, 0.5)");
  }
  if (!(m.rho > 0) || !std::isfinite(m.rho)) {
    return Status::failure(ErrorCode::ParseError, m.name + ": rho must be > 0");
  }
  if (!(m.price >= 0) || !std::isfinite(m.price)) {
    return Status::failure(ErrorCode::ParseError,
                           m.name + ": price must be >= 0");
  }
  if (!(m.sigma_allow > 0) || !std::isfinite(m.sigma_allow)) {
    return Status::failure(ErrorCode::ParseError,
                           m.name + ": sigma_allow must be > 0");
  }
  return ok_status();
}

namespace {

bool parse_double(std::string_view field, double& out) {
  field = trim(field);
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

}  // namespace

Result<MaterialLibrary> MaterialLibrary::parse(std::string_view text) {
  MaterialLibrary lib;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t bar = line.find('|', start);
      fields.push_back(line.substr(
          start, bar == std::string_view::npos ? std::string_view::npos
                                               : bar - start));
      if (bar == std::string_view::npos) break;
      start = bar + 1;
    }
    if (fields.size() != 6) {
      return Result<MaterialLibrary>::failure(
          ErrorCode::ParseError,
          "line " + std::to_string(line_no) + ": expected 6 fields, got " +
              std::to_string(fields.size()));
    }

    Material m;
    m.name = std::string(trim(fields[0]));
    if (!parse_double(fields[1], m.E) || !parse_double(fields[2], m.nu) ||
        !parse_double(fields[3], m.rho) || !parse_double(fields[4], m.price) ||
        !parse_double(fields[5], m.sigma_allow)) {
      return Result<MaterialLibrary>::failure(
          ErrorCode::ParseError,
          "line " + std::to_string(line_no) + ": bad numeric field");
    }
    if (auto st = validate(m); !st.ok()) {
      return Result<MaterialLibrary>::failure(
          ErrorCode::ParseError,
          "line " + std::to_string(line_no) + ": " + st.error().message);
    }
    if (!seen.insert(m.name).second) {
      return Result<MaterialLibrary>::failure(
          ErrorCode::ParseError,
          "line " + std::to_string(line_no) + ": duplicate name " + m.name);
    }
    lib.materials_.push_back(std::move(m));
  }
  if (lib.materials_.empty()) {
    return Result<MaterialLibrary>::failure(ErrorCode::ParseError,
                                            "no material records");
  }
  return lib;
}

Result<MaterialLibrary> MaterialLibrary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return Result<MaterialLibrary>::failure(ErrorCode::IoError,
                                            "cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const MaterialLibrary& MaterialLibrary::builtin() {
  static const MaterialLibrary lib = [] {
    auto r = parse(detail::kBuiltinMaterialsText);
    // The bundled data is validated by tests; a parse failure here is a
    // build defect.
    if (!r.ok()) std::abort();
    return r.take();
  }();
  return lib;
}

Result<Material> MaterialLibrary::lookup(std::string_view name) const {
  const std::string_view query = trim(name);
  for (const Material& m : materials_) {
    if (m.name == query) return m;
  }
  return Result<Material>::failure(
      ErrorCode::UnknownMaterial,
      "material not in library: " + std::string(query));
}

std::string MaterialLibrary::to_text() const {
  std::ostringstream out;
  for (const Material& m : materials_) {
    out << m.name << '|' << m.E << '|' << m.nu << '|' << m.rho << '|'
        << m.price << '|' << m.sigma_allow << '\n';
  }
  return out.str();
}

}  // namespace cosmo
