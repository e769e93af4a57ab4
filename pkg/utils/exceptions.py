class QuantumKernelError(Exception):
    def __init__(self, message="量子决策树内部错误"):
        self.message = message
        super().__init__(self.message)


class DimensionError(QuantumKernelError):
    def __init__(self, message="维度不匹配"):
        super().__init__(message)


class DomainError(QuantumKernelError):
    def __init__(self, message="参数超出定义域"):
        super().__init__(message)


class SizeError(QuantumKernelError):
    def __init__(self, message="比特数超出允许范围"):
        super().__init__(message)


class InputError(QuantumKernelError):
    def __init__(self, message="输入为空或无效"):
        super().__init__(message)


class SolverError(QuantumKernelError):
    def __init__(self, message="基态求解失败", iterations=None, params=None):
        self.iterations = iterations
        self.params = params
        super().__init__(message)


class DegenerateEvidenceError(QuantumKernelError):
    def __init__(self, message="观测结果在所有候选态下概率为零，无法更新"):
        super().__init__(message)


class ConfigurationError(QuantumKernelError):
    def __init__(self, message="配置错误", errors=None):
        self.errors = list(errors) if errors else []
        super().__init__(message)


class SampleSizeError(QuantumKernelError):
    def __init__(self, message="样本数量不足（至少需要2个）"):
        super().__init__(message)
