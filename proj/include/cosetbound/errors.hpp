/*
   Copyright 2026 The cosetbound authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef COSETBOUND_ERRORS_HPP
#define COSETBOUND_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cosetbound {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
   public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NotPrime : public Error {
   public:
    using Error::Error;
};

class NotDivisor : public Error {
   public:
    using Error::Error;
};

class ZeroElement : public Error {
   public:
    using Error::Error;
};

/// Parse failure; carries the byte offset of the offending character.
class SyntaxError : public Error {
   public:
    SyntaxError(const std::string& msg, std::size_t offset)
        : Error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

   private:
    std::size_t offset_;
};

class NegativeExponent : public Error {
   public:
    using Error::Error;
};

class BadShape : public Error {
   public:
    using Error::Error;
};

class ZeroPolynomial : public Error {
   public:
    using Error::Error;
};

class CommonFactor : public Error {
   public:
    using Error::Error;
};

class Overflow : public Error {
   public:
    using Error::Error;
};

class OrderTooLarge : public Error {
   public:
    using Error::Error;
};

class ParamsInfeasible : public Error {
   public:
    using Error::Error;
};

class NoKernel : public Error {
   public:
    using Error::Error;
};

class PrecondViolated : public Error {
   public:
    using Error::Error;
};

class NotHomogeneous : public Error {
   public:
    using Error::Error;
};

class RootMissing : public Error {
   public:
    using Error::Error;
};

class CosetCollision : public Error {
   public:
    using Error::Error;
};

class SingularEvaluation : public Error {
   public:
    using Error::Error;
};

class BadExponent : public Error {
   public:
    using Error::Error;
};

class ConfigError : public Error {
   public:
    using Error::Error;
};

}  // namespace cosetbound

#endif  // COSETBOUND_ERRORS_HPP
