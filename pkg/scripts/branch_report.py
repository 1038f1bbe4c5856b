"""Branch histogram and winning candidates of the default verify run."""
from circumference.harness import REQUIRED_LABELS, verify

if __name__ == "__main__":
    report = verify()
    print(f"{report.calls} calls, {len(report.failures)} failures")
    for label in REQUIRED_LABELS:
        print(f"  {label:40s} {report.histogram.get(label, 0)}")
    print("winning candidates")
    for key, n in report.winners.items():
        print(f"  {key:48s} {n}")
