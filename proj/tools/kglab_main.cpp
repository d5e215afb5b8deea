#include <cstdio>

int main() {
    std::puts("kglab: subcommands arrive with the full build");
    return 0;
}
