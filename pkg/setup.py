from setuptools import setup

VERSION = '1.0.0'

setup(
    name='condg-newton',
    packages=[
        'condg',
        'condg.newton',
        'condg.newton.lib'],
    version=VERSION,
    description='Newton conditional gradient solver for constrained '
                'nonlinear systems',
    long_description=open('README.md').read(),
    long_description_content_type='text/markdown',
    keywords=['newton', 'conditional gradient', 'frank-wolfe',
              'nonlinear equations', 'benchmark'],
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Software Development'
    ],
    python_requires='>=3.8',
    install_requires=['numpy', 'scipy', 'qpack', 'twisted'],
    extras_require={
        'test': ['pytest', 'pytest-twisted']
    },
    entry_points={
        'console_scripts': [
            'newton-condg=condg.newton.lib.cli:run'
        ]
    }
)
