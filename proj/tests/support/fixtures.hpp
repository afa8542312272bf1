#pragma once

// Shared test fixtures: the worked queries used across suites, a
// deterministic employees-style data generator, and temp-dir plumbing.

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "relq/catalog.hpp"
#include "relq/csv.hpp"
#include "relq/errors.hpp"

namespace fixtures {

// --- schema-only catalogs ---------------------------------------------------

inline relq::Catalog make_catalog(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& tables,
    std::size_t row_count = 1) {
  relq::Catalog catalog;
  for (const auto& [name, columns] : tables) {
    relq::TableSchema schema;
    schema.row_count = row_count;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      schema.column_order.push_back(columns[i]);
      schema.columns[columns[i]] = relq::ColumnSchema{relq::ColumnType::integer, i};
    }
    catalog.tables[name] = std::move(schema);
  }
  return catalog;
}

/// The demo database structure: six tables and their column sets.
inline relq::Catalog demo_schema_catalog() {
  return make_catalog({
      {"employees",
       {"emp_no", "birth_date", "first_name", "last_name", "gender", "hire_date"}},
      {"departments", {"dept_no", "dept_name"}},
      {"dept_emp", {"emp_no", "dept_no", "from_date", "to_date"}},
      {"salaries", {"emp_no", "salary", "from_date", "to_date"}},
      {"dept_manager", {"dept_no", "emp_no", "from_date", "to_date"}},
      {"titles", {"emp_no", "title", "from_date", "to_date"}},
  });
}

// --- worked queries -------------------------------------------------------

inline constexpr const char* kTwoTableQuery =
    "SELECT emp.empname, dept.deptname\n"
    "FROM emp, dept\n"
    "WHERE emp.deptno = dept.deptno;";

inline constexpr const char* kSixJoinQuery =
    "SELECT *\n"
    "FROM employees e\n"
    "  JOIN salaries s ON e.emp_no = s.emp_no\n"
    "  JOIN titles t ON e.emp_no = t.emp_no\n"
    "  JOIN dept_emp de ON e.emp_no = de.emp_no\n"
    "  JOIN departments d ON d.emp_no = t.emp_no\n"
    "  JOIN dept_manager dm ON d.dept_no = dm.dept_no\n"
    "  JOIN employees edm ON dm.emp_no = edm.emp_no";

inline constexpr const char* kNestedOrderByQuery =
    "SELECT *\n"
    "FROM (SELECT * FROM salaries ORDER BY to_date DESC) sa, Employees e\n"
    "WHERE e.Emp_no = sa.Emp_no\n"
    "GROUP BY sa.Emp_no;";

inline constexpr const char* kColumnAliasQuery =
    "SELECT Customername,\n"
    "  CONCAT(Address, \", \", City, \", \", Postalcode, \",\", Country) AS Address\n"
    "FROM Customers;";

inline constexpr const char* kDemoQuery =
    "SELECT *\n"
    "FROM employees\n"
    "INNER JOIN (SELECT *\n"
    "            FROM (SELECT * FROM salaries ORDER BY emp_no, from_date DESC) temp\n"
    "            GROUP BY emp_no) tp\n"
    "ON employees.emp_no = tp.emp_no\n"
    "INNER JOIN (SELECT *\n"
    "            FROM (SELECT * FROM dept_emp ORDER BY emp_no, from_date DESC) temp2\n"
    "            GROUP BY emp_no) tt\n"
    "ON tt.emp_no = employees.emp_no;";

// --- filesystem helpers ----------------------------------------------------

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("relq-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw relq::IoError("cannot write " + path.string());
  out << text;
}

// --- deterministic employees-style dataset ---------------------------------

struct EmployeesOptions {
  int employees = 1000;
  int departments = 9;
  int salaries_per_employee = 9;   // exact, keeps ratios predictable
  unsigned seed = 42;
};

namespace detail {

inline int pick(std::mt19937& rng, int bound) {
  return static_cast<int>(rng() % static_cast<unsigned>(bound));
}

inline std::string pad(int value, int width) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%0*d", width, value);
  return buf;
}

inline std::string date(int year, int month, int day) {
  return pad(year, 4) + "-" + pad(month, 2) + "-" + pad(day, 2);
}

}  // namespace detail

/// Writes the six-table dataset (employees, departments, dept_emp, salaries,
/// dept_manager, titles) as CSVs. Shapes are fixed so tests can assert on
/// them: emp_no is unique in employees; every employee has exactly
/// `salaries_per_employee` salary rows (referential integrity holds); 90% of
/// employees appear in dept_emp and 10% of employees appear there twice.
inline void generate_employees_fixture(const std::filesystem::path& dir,
                                       const EmployeesOptions& opt = {}) {
  std::mt19937 rng(opt.seed);
  std::filesystem::create_directories(dir);

  static const char* first_names[] = {"mary", "john",  "elena", "arno",  "kyoko",
                                      "sam",  "petra", "luis",  "ivana", "chen"};
  static const char* last_names[] = {"smith", "ito",   "garcia", "novak", "patel",
                                     "brown", "mensah", "silva", "kim",   "weber"};
  static const char* dept_names[] = {"development", "sales",   "research", "marketing",
                                     "finance",     "support", "quality",  "logistics",
                                     "production",  "design"};
  static const char* titles[] = {"engineer", "senior engineer", "staff",
                                 "manager",  "technique leader"};

  {
    std::ofstream out(dir / "departments.csv", std::ios::binary);
    out << "dept_no,dept_name\n";
    for (int d = 0; d < opt.departments; ++d) {
      out << "d" << detail::pad(d + 1, 3) << "," << dept_names[d % 10] << "\n";
    }
  }
  {
    std::ofstream out(dir / "employees.csv", std::ios::binary);
    out << "emp_no,birth_date,first_name,last_name,gender,hire_date\n";
    for (int e = 0; e < opt.employees; ++e) {
      out << (10001 + e) << ","
          << detail::date(1950 + detail::pick(rng, 20), 1 + detail::pick(rng, 12),
                          1 + detail::pick(rng, 28))
          << "," << first_names[detail::pick(rng, 10)] << ","
          << last_names[detail::pick(rng, 10)] << ","
          << (detail::pick(rng, 2) ? "M" : "F") << ","
          << detail::date(1985 + detail::pick(rng, 15), 1 + detail::pick(rng, 12),
                          1 + detail::pick(rng, 28))
          << "\n";
    }
  }
  {
    std::ofstream out(dir / "salaries.csv", std::ios::binary);
    out << "emp_no,salary,from_date,to_date\n";
    for (int e = 0; e < opt.employees; ++e) {
      for (int k = 0; k < opt.salaries_per_employee; ++k) {
        int year = 1990 + k;
        out << (10001 + e) << "," << (40000 + detail::pick(rng, 80000)) << ","
            << detail::date(year, 1, 1) << "," << detail::date(year + 1, 1, 1)
            << "\n";
      }
    }
  }
  {
    // 90% of employees covered once; 10% of employees get a second row.
    std::vector<int> order(opt.employees);
    for (int e = 0; e < opt.employees; ++e) order[e] = e;
    for (int i = opt.employees - 1; i > 0; --i) {
      std::swap(order[i], order[detail::pick(rng, i + 1)]);
    }
    int covered = opt.employees * 9 / 10;
    int doubled = opt.employees / 10;

    std::ofstream out(dir / "dept_emp.csv", std::ios::binary);
    out << "emp_no,dept_no,from_date,to_date\n";
    auto row = [&](int e) {
      out << (10001 + e) << ",d" << detail::pad(1 + detail::pick(rng, opt.departments), 3)
          << "," << detail::date(1990 + detail::pick(rng, 10), 1, 1) << ","
          << detail::date(2001 + detail::pick(rng, 10), 1, 1) << "\n";
    };
    for (int i = 0; i < covered; ++i) row(order[i]);
    for (int i = 0; i < doubled && i < covered; ++i) row(order[i]);
  }
  {
    std::ofstream out(dir / "dept_manager.csv", std::ios::binary);
    out << "dept_no,emp_no,from_date,to_date\n";
    for (int d = 0; d < opt.departments; ++d) {
      for (int k = 0; k < 2; ++k) {
        out << "d" << detail::pad(d + 1, 3) << ","
            << (10001 + detail::pick(rng, opt.employees)) << ","
            << detail::date(1992 + detail::pick(rng, 8), 1, 1) << ","
            << detail::date(2002 + detail::pick(rng, 8), 1, 1) << "\n";
      }
    }
  }
  {
    std::ofstream out(dir / "titles.csv", std::ios::binary);
    out << "emp_no,title,from_date,to_date\n";
    for (int e = 0; e < opt.employees; ++e) {
      out << (10001 + e) << "," << titles[detail::pick(rng, 5)] << ","
          << detail::date(1990, 1, 1) << "," << detail::date(1996, 1, 1) << "\n";
      if (e % 7 == 0) {
        out << (10001 + e) << "," << titles[detail::pick(rng, 5)] << ","
            << detail::date(1996, 1, 2) << "," << detail::date(2003, 1, 1) << "\n";
      }
    }
  }
}

}  // namespace fixtures
