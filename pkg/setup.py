from setuptools import setup, find_packages

setup(
    name="heckedim",
    version='0.1.0',
    install_requires=[
        'joblib',
        'lark',
        'loguru',
        'numpy',
        'pyyaml',
        'sympy',
        'tqdm',
        'yacs',
    ],
    extras_require={
        'test': ['pytest', 'hypothesis'],
    },
    packages=find_packages(exclude=['tests']),
    package_data={'heckedim': ['grammar/*.lark']},
    entry_points={
        'console_scripts': ['hecke-dim=heckedim.cli:main'],
    },
    python_requires='>=3.8',
    classifiers=[
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3 :: Only',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    license='MIT',
    keywords='hecke algebra infinite dihedral group von neumann dimension exact arithmetic',
)
