#include "lchi/cli.hpp"

int main(int argc, char** argv) { return lchi::parse_and_dispatch(argc, argv); }
