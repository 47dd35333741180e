import time
import kcenter
import numpy as np
from tqdm import tqdm
import argparse

def get_args():
    parser = argparse.ArgumentParser(description='Partition oracle benchmark')
    parser.add_argument('--m', type=int, default=10, help="Number of demand points")
    parser.add_argument('--d', type=int, default=2, help="Dimension")
    parser.add_argument('--k', type=int, default=3, help="Number of centers")
    parser.add_argument('--gauge', choices=["euclidean", "linf", "lp3"], default="euclidean", help="Distance gauge")
    parser.add_argument('--workers', type=int, default=1, help="Worker threads")
    parser.add_argument('--cases', type=int, default=5, help="Num test cases")
    parser.add_argument('--seed', type=int, default=0, help="Random seed")
    return parser.parse_args()

def make_gauge(name):
    if name == "linf":
        return kcenter.LInf()
    if name == "lp3":
        return kcenter.Lp(3)
    return kcenter.Euclidean()

def main():
    args = get_args()
    rng = np.random.default_rng(args.seed)
    config = kcenter.SolverConfiguration(WORKERS=args.workers)
    print("Partitions per instance: %d" % kcenter.utils.count_partitions(args.m, min(args.k, args.m)))

    d = []
    values = []
    for _ in tqdm(range(args.cases)):
        inst = kcenter.Instance(rng.uniform(0, 1, size=(args.m, args.d)), make_gauge(args.gauge))
        st = time.perf_counter()
        ret = kcenter.exact_by_partition(inst, args.k, force=True, config=config)
        d.append(time.perf_counter() - st)
        values.append(ret.value)

    print(f"""
Average {sum(d) / len(d)}s
Max {max(d)}s
Min {min(d)}s

Mean optimal value {sum(values) / len(values)}
""")

if __name__ == "__main__":
    main()
