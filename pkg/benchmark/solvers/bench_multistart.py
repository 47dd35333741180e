import time
import kcenter
import numpy as np
from tqdm import tqdm
import argparse

def get_args():
    parser = argparse.ArgumentParser(description='Multi-start heuristic benchmark against the partition oracle')
    parser.add_argument('--m', type=int, default=9, help="Number of demand points")
    parser.add_argument('--k', type=int, default=3, help="Number of centers")
    parser.add_argument('--restarts', type=int, default=50, help="Random restarts")
    parser.add_argument('--workers', type=int, default=1, help="Worker threads")
    parser.add_argument('--cases', type=int, default=20, help="Num test cases")
    parser.add_argument('--seed', type=int, default=0, help="Random seed")
    return parser.parse_args()

def main():
    args = get_args()
    rng = np.random.default_rng(args.seed)
    config = kcenter.SolverConfiguration(WORKERS=args.workers)

    t_exact = []
    t_heur = []
    gaps = []
    for case in tqdm(range(args.cases)):
        inst = kcenter.Instance(rng.uniform(0, 1, size=(args.m, 2)), kcenter.Euclidean())
        st = time.perf_counter()
        exact = kcenter.exact_by_partition(inst, args.k, config=config)
        t_exact.append(time.perf_counter() - st)
        st = time.perf_counter()
        heur = kcenter.multi_start(inst, args.k, args.restarts, args.seed + case, config=config)
        t_heur.append(time.perf_counter() - st)
        gaps.append(heur.value - exact.value)

    hits = sum(1 for g in gaps if g <= 1e-4)
    print(f"""
Exact average {sum(t_exact) / len(t_exact)}s
Heuristic average {sum(t_heur) / len(t_heur)}s

Max gap {max(gaps)}
Within 1e-4 of optimum {hits}/{len(gaps)}
""")

if __name__ == "__main__":
    main()
