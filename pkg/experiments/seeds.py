"""
随机流派生

实验中的全部随机性都来自 derive_seed(master_seed, trial_index, role_tag)：
主种子、试验索引与角色标签经 numpy SeedSequence 的哈希混合得到 64 位种子，
再交给 numpy.random.default_rng。角色标签按 UTF-8 字节转为整数放入 spawn_key，
因此不同标签、不同试验得到互不相关的随机流，且结果跨版本稳定。
"""

import numpy as np

ROLE_STATE_GEN = "state-gen"
ROLE_OBSERVABLE_GEN = "observable-gen"
ROLE_SHOTS = "shots"
ROLE_SELECT = "select"
ROLE_NOISE = "noise"

SEED_MASK = (1 << 64) - 1


def _tag_key(role_tag: str) -> int:
    return int.from_bytes(role_tag.encode('utf-8'), 'little')


def derive_seed(master_seed: int, trial_index: int, role_tag: str) -> int:
    sequence = np.random.SeedSequence(
        entropy=int(master_seed) & SEED_MASK,
        spawn_key=(int(trial_index), _tag_key(role_tag)),
    )
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def trial_rng(master_seed: int, trial_index: int, role_tag: str) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master_seed, trial_index, role_tag))
