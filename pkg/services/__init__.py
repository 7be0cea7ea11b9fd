from services.bench import BenchRow, BenchService, generate_family

__all__ = ["BenchRow", "BenchService", "generate_family"]
