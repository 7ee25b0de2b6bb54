#include "pmcmc/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace pmcmc {

namespace {

void append_double(std::string& line, double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  line.append(buf, res.ptr);
}

double parse_double(const std::string& field, const std::string& path) {
  double x = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), x);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw ParseError("bad numeric field '" + field + "' in " + path);
  return x;
}

}  // namespace

void write_chain_csv(const std::string& path, const ChainRecord& record,
                     std::uint64_t thin) {
  if (thin == 0) throw ConfigError("write_chain_csv: thin must be >= 1");
  if (record.samples.empty()) throw EmptyChain("write_chain_csv: empty record");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("write_chain_csv: cannot open " + path);

  const int d = static_cast<int>(record.samples.front().size());
  std::string line = "iter,slot,moved";
  for (int k = 0; k < d; ++k) line += ",coord_" + std::to_string(k);
  line += '\n';
  out << line;

  for (std::size_t i = 0; i < record.samples.size(); ++i) {
    if (i != 0 && i % thin != 0) continue;
    line.clear();
    line += std::to_string(i);
    line += ',';
    line += std::to_string(i == 0 ? 0 : record.selected[i - 1]);
    line += ',';
    line += (i != 0 && record.moved[i - 1]) ? '1' : '0';
    for (int k = 0; k < d; ++k) {
      line += ',';
      append_double(line, record.samples[i][k]);
    }
    line += '\n';
    out << line;
  }
  if (!out) throw Error("write_chain_csv: write failed for " + path);
}

ChainRecord read_chain_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("read_chain_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("read_chain_csv: missing header in " + path);

  int d = 0;
  {
    std::stringstream header(line);
    std::string field;
    int column = 0;
    while (std::getline(header, field, ',')) {
      if (column >= 3) ++d;
      ++column;
    }
    if (column < 4)
      throw ParseError("read_chain_csv: header needs coord columns in " + path);
  }

  ChainRecord rec;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string field;
    Vector q(d);
    int slot = 0, moved = 0, column = 0;
    while (std::getline(row, field, ',')) {
      if (column == 1) slot = static_cast<int>(parse_double(field, path));
      else if (column == 2) moved = static_cast<int>(parse_double(field, path));
      else if (column >= 3) {
        if (column - 3 >= d) throw ParseError("read_chain_csv: extra column in " + path);
        q[column - 3] = parse_double(field, path);
      }
      ++column;
    }
    if (column != d + 3)
      throw ParseError("read_chain_csv: short row in " + path);
    rec.samples.push_back(std::move(q));
    if (!first) {
      rec.selected.push_back(slot);
      rec.moved.push_back(static_cast<char>(moved));
    }
    first = false;
  }
  if (rec.samples.empty()) throw EmptyChain("read_chain_csv: no rows in " + path);
  return rec;
}

}  // namespace pmcmc
