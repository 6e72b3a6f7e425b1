#include <benchmark/benchmark.h>
int main_placeholder; // replaced below
BENCHMARK_MAIN();
