#include "aoi/grid_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "aoi/error.hpp"

namespace aoi {

namespace {

constexpr std::string_view kMagic = " aoi-grid 1";

char* put_real(char* first, char* last, double v) {
  return std::to_chars(first, last, v, std::chars_format::general, 17).ptr;
}

char* put_int(char* first, char* last, int v) { return std::to_chars(first, last, v).ptr; }

double parse_real(std::string_view s, const std::string& context) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ValidationError("grid file: bad number '" + std::string(s) + "' in " + context);
  return v;
}

int parse_int(std::string_view s, const std::string& context) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ValidationError("grid file: bad integer '" + std::string(s) + "' in " + context);
  return v;
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  return std::string(buf, put_real(buf, buf + sizeof buf, v));
}

void write_grid(std::ostream& out, const GridFile& file) {
  const Distribution& d = file.dist;
  out << '#' << kMagic << '\n';
  out << "# p " << format_real(d.params.p()) << '\n';
  out << "# q " << format_real(d.params.q()) << '\n';
  out << "# policy " << d.policy_id << '\n';
  out << "# y_hat " << d.y_hat() << '\n';
  out << "# tail_mass " << format_real(d.tail_mass) << '\n';
  out << "# norm_constant " << format_real(d.norm_constant) << '\n';
  out << "# normalized " << (d.normalized ? 1 : 0) << '\n';
  for (const auto& line : file.extra_header) out << '#' << line << '\n';

  const int n = d.y_hat();
  std::string block;
  char buf[32];
  auto append_int = [&](int v) { block.append(buf, put_int(buf, buf + sizeof buf, v)); };
  for (int x = 1; x <= n; ++x) {
    block.clear();
    for (int y = 1; y <= n; ++y) {
      append_int(x);
      block.push_back(' ');
      append_int(y);
      block.push_back(' ');
      block.append(buf, put_real(buf, buf + sizeof buf, d.grid(x, y)));
      block.push_back('\n');
    }
    block.push_back('\n');
    out << block;
  }
}

void write_grid_file(const std::string& path, const GridFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write grid file '" + path + "'");
  write_grid(out, file);
}

GridFile read_grid(std::istream& in) {
  GridFile file;
  std::string line;
  bool seen_magic = false;
  double p = -1.0, q = -1.0;
  int size = -1;
  bool in_header = true;
  int expected_x = 1, expected_y = 1;

  while (std::getline(in, line)) {
    if (in_header && !line.empty() && line.front() == '#') {
      const std::string_view body(line.data() + 1, line.size() - 1);
      if (!seen_magic) {
        if (body != kMagic) throw ValidationError("grid file: missing '# aoi-grid 1' header");
        seen_magic = true;
        continue;
      }
      const auto space = body.find(' ', 1);
      const std::string key(body.substr(1, space == std::string_view::npos ? std::string_view::npos : space - 1));
      const std::string_view value = space == std::string_view::npos ? std::string_view{} : body.substr(space + 1);
      if (key == "p") {
        p = parse_real(value, "header p");
      } else if (key == "q") {
        q = parse_real(value, "header q");
      } else if (key == "policy") {
        file.dist.policy_id = std::string(value);
      } else if (key == "y_hat") {
        size = parse_int(value, "header y_hat");
      } else if (key == "tail_mass") {
        file.dist.tail_mass = parse_real(value, "header tail_mass");
      } else if (key == "norm_constant") {
        file.dist.norm_constant = parse_real(value, "header norm_constant");
      } else if (key == "normalized") {
        file.dist.normalized = parse_int(value, "header normalized") != 0;
      } else {
        file.extra_header.emplace_back(body);
      }
      continue;
    }
    if (in_header) {
      if (!seen_magic) throw ValidationError("grid file: missing '# aoi-grid 1' header");
      if (size < 1) throw ValidationError("grid file: missing or invalid y_hat");
      file.dist.params = NetworkParams(p, q);
      file.dist.grid = Grid(size);
      in_header = false;
    }
    if (line.empty()) continue;

    const std::string_view sv(line);
    const auto s1 = sv.find(' ');
    const auto s2 = s1 == std::string_view::npos ? s1 : sv.find(' ', s1 + 1);
    if (s2 == std::string_view::npos) throw ValidationError("grid file: malformed data line '" + line + "'");
    const int x = parse_int(sv.substr(0, s1), "data x");
    const int y = parse_int(sv.substr(s1 + 1, s2 - s1 - 1), "data y");
    if (x != expected_x || y != expected_y) {
      std::ostringstream msg;
      msg << "grid file: expected point (" << expected_x << ',' << expected_y << ") but found (" << x << ',' << y
          << ')';
      throw ValidationError(msg.str());
    }
    file.dist.grid(x, y) = parse_real(sv.substr(s2 + 1), "data value");
    if (++expected_y > size) {
      expected_y = 1;
      ++expected_x;
    }
  }
  if (in_header) throw ValidationError("grid file: no data");
  if (expected_x != size + 1) throw ValidationError("grid file: truncated data section");
  return file;
}

GridFile read_grid_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open grid file '" + path + "'");
  return read_grid(in);
}

void write_surface(std::ostream& out, const std::vector<std::string>& header, const std::vector<double>& a_axis,
                   const std::vector<double>& b_axis, const std::function<double(std::size_t, std::size_t)>& z) {
  for (const auto& h : header) out << '#' << h << '\n';
  for (std::size_t i = 0; i < a_axis.size(); ++i) {
    for (std::size_t j = 0; j < b_axis.size(); ++j)
      out << format_real(a_axis[i]) << ' ' << format_real(b_axis[j]) << ' ' << format_real(z(i, j)) << '\n';
    out << '\n';
  }
}

}  // namespace aoi
